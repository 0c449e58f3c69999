#include "geomsched/psplib.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

namespace geomsched {

namespace {

struct Lines {
    std::vector<std::string> text;
    size_t pos = 0;

    bool done() const { return pos >= text.size(); }
    const std::string& peek() const { return text[pos]; }
    const std::string& next() { return text[pos++]; }
    int lineno() const { return static_cast<int>(pos); }  // 1-based of last read
};

[[noreturn]] void fail(const Lines& lines, const std::string& what) {
    throw PsplibParseError("psplib parse error at line " + std::to_string(lines.lineno()) +
                           ": " + what);
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

// Advances to the line containing the marker and returns it.
const std::string& seek(Lines& lines, const std::string& marker) {
    while (!lines.done()) {
        const std::string& line = lines.next();
        if (contains(line, marker)) return line;
    }
    throw PsplibParseError("psplib parse error: missing section '" + marker + "'");
}

int trailing_int(const Lines& lines, const std::string& line) {
    auto colon = line.find(':');
    if (colon == std::string::npos) fail(lines, "expected 'key : value' in '" + line + "'");
    std::istringstream is(line.substr(colon + 1));
    int v;
    if (!(is >> v)) fail(lines, "expected integer after ':' in '" + line + "'");
    return v;
}

}  // namespace

Instance parse_psplib(const std::string& text, const PsplibOptions& opts) {
    Lines lines;
    {
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) lines.text.push_back(line);
    }

    Instance inst;
    inst.rate = opts.rate;
    inst.semantics = opts.semantics;

    int n_jobs = trailing_int(lines, seek(lines, "jobs (incl."));
    if (n_jobs < 2) fail(lines, "job count must include dummy source and sink");
    inst.horizon = trailing_int(lines, seek(lines, "horizon"));

    seek(lines, "RESOURCES");
    int n_renewable = trailing_int(lines, seek(lines, "renewable"));
    int n_nonrenewable = trailing_int(lines, seek(lines, "nonrenewable"));
    int n_doubly = trailing_int(lines, seek(lines, "doubly"));
    if (n_nonrenewable != 0 || n_doubly != 0)
        fail(lines, "only renewable resources are supported");
    if (n_renewable < 1) fail(lines, "expected at least one renewable resource");

    inst.jobs.resize(static_cast<size_t>(n_jobs));
    for (int i = 0; i < n_jobs; ++i) {
        auto& job = inst.jobs[static_cast<size_t>(i)];
        job.id = i + 1;
        job.demands.assign(static_cast<size_t>(n_renewable), 0.0);
    }

    seek(lines, "PRECEDENCE RELATIONS");
    if (lines.done()) throw PsplibParseError("psplib parse error: truncated precedence section");
    lines.next();  // column header
    for (int i = 0; i < n_jobs; ++i) {
        if (lines.done()) fail(lines, "truncated precedence section");
        std::istringstream is(lines.next());
        int jobnr, modes, n_succ;
        if (!(is >> jobnr >> modes >> n_succ))
            fail(lines, "expected 'jobnr #modes #successors ...'");
        if (jobnr < 1 || jobnr > n_jobs) fail(lines, "job number out of range");
        if (modes != 1) fail(lines, "unsupported multi-mode job (modes = " +
                                        std::to_string(modes) + ")");
        for (int s = 0; s < n_succ; ++s) {
            int succ;
            if (!(is >> succ)) fail(lines, "truncated successor list");
            if (succ < 1 || succ > n_jobs) fail(lines, "successor out of range");
            inst.jobs[static_cast<size_t>(succ) - 1].preds.push_back(jobnr);
        }
    }

    seek(lines, "REQUESTS/DURATIONS");
    // Skip the column header and the dashed separator if present.
    while (!lines.done() &&
           (contains(lines.peek(), "jobnr") || contains(lines.peek(), "---")))
        lines.next();
    for (int i = 0; i < n_jobs; ++i) {
        if (lines.done()) fail(lines, "truncated requests/durations section");
        std::istringstream is(lines.next());
        int jobnr, mode, duration;
        if (!(is >> jobnr >> mode >> duration))
            fail(lines, "expected 'jobnr mode duration requests...'");
        if (jobnr < 1 || jobnr > n_jobs) fail(lines, "job number out of range");
        if (mode != 1) fail(lines, "unsupported mode " + std::to_string(mode));
        auto& job = inst.jobs[static_cast<size_t>(jobnr) - 1];
        job.processing_time = duration;
        for (int k = 0; k < n_renewable; ++k) {
            double q;
            if (!(is >> q)) fail(lines, "truncated resource requests");
            job.demands[static_cast<size_t>(k)] = q;
        }
    }

    seek(lines, "RESOURCEAVAILABILITIES");
    if (lines.done()) throw PsplibParseError("psplib parse error: truncated availabilities");
    lines.next();  // column header
    {
        if (lines.done()) fail(lines, "truncated availabilities");
        std::istringstream is(lines.next());
        for (int k = 0; k < n_renewable; ++k) {
            double r;
            if (!(is >> r)) fail(lines, "expected one availability per renewable resource");
            inst.resources.push_back(ResourceProfile(k + 1, r));
        }
    }

    for (auto& job : inst.jobs) {
        std::sort(job.preds.begin(), job.preds.end());
        if (job.processing_time > 0) job.profit = opts.profit_default;
    }
    inst.rebuild_index();
    return inst;
}

}  // namespace geomsched
