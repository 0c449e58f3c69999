// Deterministic generator of PSPLib-format single-mode instances, shaped
// like the published J30/J120 sets: dummy source and sink, layered random
// activity network, four renewable resources.
#ifndef GEOMSCHED_TESTS_PSPLIB_GEN_HPP
#define GEOMSCHED_TESTS_PSPLIB_GEN_HPP

#include <algorithm>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace geomsched::testing {

struct PsplibGenParams {
    int real_jobs = 30;
    int resources = 4;
    int max_duration = 10;
    double resource_strength = 0.5;  // 0 = tight (peak demand), 1 = loose
};

inline std::string generate_psplib_sm(unsigned seed, const PsplibGenParams& p = {}) {
    std::mt19937 rng(seed);
    auto uniform_int = [&rng](int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    };

    const int n = p.real_jobs + 2;  // with dummy source (1) and sink (n)
    std::vector<int> duration(static_cast<size_t>(n) + 1, 0);
    std::vector<std::vector<int>> demand(static_cast<size_t>(n) + 1,
                                         std::vector<int>(static_cast<size_t>(p.resources), 0));
    for (int j = 2; j < n; ++j) {
        duration[static_cast<size_t>(j)] = uniform_int(1, p.max_duration);
        int used = uniform_int(1, std::min(2, p.resources));
        for (int pick = 0; pick < used; ++pick) {
            int k = uniform_int(0, p.resources - 1);
            demand[static_cast<size_t>(j)][static_cast<size_t>(k)] = uniform_int(1, 10);
        }
    }

    // Layered activity-on-node network: every real job gets 1..3 successors
    // in later layers; layer fronts hang off the source, tails feed the sink.
    int layers = std::max(3, p.real_jobs / 6);
    std::vector<int> layer_of(static_cast<size_t>(n) + 1, 0);
    for (int j = 2; j < n; ++j) layer_of[static_cast<size_t>(j)] = uniform_int(1, layers);
    layer_of[static_cast<size_t>(n)] = layers + 1;

    std::vector<std::vector<int>> successors(static_cast<size_t>(n) + 1);
    std::vector<bool> has_pred(static_cast<size_t>(n) + 1, false);
    for (int j = 2; j < n; ++j) {
        std::vector<int> later;
        for (int k = 2; k < n; ++k)
            if (layer_of[static_cast<size_t>(k)] > layer_of[static_cast<size_t>(j)])
                later.push_back(k);
        std::shuffle(later.begin(), later.end(), rng);
        int want = std::min<int>(uniform_int(1, 3), static_cast<int>(later.size()));
        for (int i = 0; i < want; ++i) {
            successors[static_cast<size_t>(j)].push_back(later[static_cast<size_t>(i)]);
            has_pred[static_cast<size_t>(later[static_cast<size_t>(i)])] = true;
        }
        if (want == 0) successors[static_cast<size_t>(j)].push_back(n);
    }
    for (int j = 2; j < n; ++j) {
        if (!has_pred[static_cast<size_t>(j)]) successors[1].push_back(j);
        if (successors[static_cast<size_t>(j)].empty())
            successors[static_cast<size_t>(j)].push_back(n);
    }
    if (successors[1].empty()) successors[1].push_back(2);
    for (auto& s : successors) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
    }

    // Availability between the peak single demand and the total demand,
    // interpolated by resource strength.
    std::vector<int> avail(static_cast<size_t>(p.resources), 1);
    for (int k = 0; k < p.resources; ++k) {
        int peak = 1, total = 0;
        for (int j = 2; j < n; ++j) {
            peak = std::max(peak, demand[static_cast<size_t>(j)][static_cast<size_t>(k)]);
            total += demand[static_cast<size_t>(j)][static_cast<size_t>(k)];
        }
        double loose = std::max(1.0, total / std::max(1.0, layers * 1.0));
        avail[static_cast<size_t>(k)] = std::max(
            peak, static_cast<int>(peak + p.resource_strength * (loose - peak) + 0.5));
    }

    int horizon = 0;
    for (int j = 1; j <= n; ++j) horizon += duration[static_cast<size_t>(j)];
    horizon = std::max(horizon, 1);

    std::ostringstream os;
    std::string stars(72, '*');
    os << stars << "\n";
    os << "file with basedata            : synth" << seed << ".bas\n";
    os << "initial value random generator: " << seed << "\n";
    os << stars << "\n";
    os << "projects                      :  1\n";
    os << "jobs (incl. supersource/sink ):  " << n << "\n";
    os << "horizon                       :  " << horizon << "\n";
    os << "RESOURCES\n";
    os << "  - renewable                 :  " << p.resources << "   R\n";
    os << "  - nonrenewable              :  0   N\n";
    os << "  - doubly constrained        :  0   D\n";
    os << stars << "\n";
    os << "PROJECT INFORMATION:\n";
    os << "pronr.  #jobs rel.date duedate tardcost  MPM-Time\n";
    os << "    1     " << p.real_jobs << "      0       " << horizon << "       0       "
       << horizon << "\n";
    os << stars << "\n";
    os << "PRECEDENCE RELATIONS:\n";
    os << "jobnr.    #modes  #successors   successors\n";
    for (int j = 1; j <= n; ++j) {
        const auto& succ = successors[static_cast<size_t>(j)];
        os << "  " << j << "        1          " << succ.size() << "        ";
        for (int s : succ) os << "   " << s;
        os << "\n";
    }
    os << stars << "\n";
    os << "REQUESTS/DURATIONS:\n";
    os << "jobnr. mode duration";
    for (int k = 1; k <= p.resources; ++k) os << "  R " << k;
    os << "\n";
    os << std::string(72, '-') << "\n";
    for (int j = 1; j <= n; ++j) {
        os << "  " << j << "      1     " << duration[static_cast<size_t>(j)] << "   ";
        for (int k = 0; k < p.resources; ++k)
            os << "    " << demand[static_cast<size_t>(j)][static_cast<size_t>(k)];
        os << "\n";
    }
    os << stars << "\n";
    os << "RESOURCEAVAILABILITIES:\n";
    os << "  ";
    for (int k = 1; k <= p.resources; ++k) os << "R " << k << "  ";
    os << "\n";
    os << "  ";
    for (int k = 0; k < p.resources; ++k) os << " " << avail[static_cast<size_t>(k)] << "  ";
    os << "\n";
    os << stars << "\n";
    return os.str();
}

}  // namespace geomsched::testing

#endif
