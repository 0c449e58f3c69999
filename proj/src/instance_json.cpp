#include "geomsched/instance_json.hpp"

#include <json.hpp>

namespace geomsched {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw StructuralError("instance json error at " + path + ": " + what);
}

json parse_or_throw(const std::string& text, const char* what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded())
        throw StructuralError(std::string("malformed json in ") + what);
    return j;
}

}  // namespace

Instance parse_instance_json(const std::string& text) {
    json root = parse_or_throw(text, "instance");
    Instance inst;

    if (!root.contains("T") || !root["T"].is_number_integer()) fail("/T", "expected integer horizon");
    inst.horizon = root["T"].get<int>();
    if (inst.horizon < 1) fail("/T", "horizon must be >= 1");

    if (!root.contains("rate") || !root["rate"].is_number()) fail("/rate", "expected number");
    inst.rate = root["rate"].get<double>();

    if (!root.contains("semantics") || !root["semantics"].is_string())
        fail("/semantics", "expected 'cumulative' or 'renewable'");
    inst.semantics = semantics_from_string(root["semantics"].get<std::string>());

    if (!root.contains("resources") || !root["resources"].is_array())
        fail("/resources", "expected array");
    size_t ri = 0;
    for (const auto& r : root["resources"]) {
        std::string path = "/resources/" + std::to_string(ri++);
        if (!r.contains("id") || !r["id"].is_number_integer()) fail(path + "/id", "expected integer");
        if (!r.contains("availability")) fail(path + "/availability", "missing");
        const auto& a = r["availability"];
        if (a.is_number()) {
            inst.resources.push_back(ResourceProfile(r["id"].get<int>(), a.get<double>()));
        } else if (a.is_array()) {
            std::vector<double> values;
            for (const auto& v : a) {
                if (!v.is_number()) fail(path + "/availability", "expected numbers");
                values.push_back(v.get<double>());
            }
            inst.resources.push_back(ResourceProfile(r["id"].get<int>(), std::move(values)));
        } else {
            fail(path + "/availability", "expected number or array");
        }
    }

    if (!root.contains("jobs") || !root["jobs"].is_array()) fail("/jobs", "expected array");
    size_t ji = 0;
    for (const auto& je : root["jobs"]) {
        std::string path = "/jobs/" + std::to_string(ji++);
        Job job;
        if (!je.contains("id") || !je["id"].is_number_integer()) fail(path + "/id", "expected integer");
        job.id = je["id"].get<int>();
        if (!je.contains("p") || !je["p"].is_number_integer()) fail(path + "/p", "expected integer");
        job.processing_time = je["p"].get<int>();
        if (job.processing_time < 0) fail(path + "/p", "processing time must be >= 0");
        if (!je.contains("profit") || !je["profit"].is_number())
            fail(path + "/profit", "expected number");
        job.profit = je["profit"].get<double>();
        if (!je.contains("demands") || !je["demands"].is_array())
            fail(path + "/demands", "expected array");
        for (const auto& d : je["demands"]) {
            if (!d.is_number()) fail(path + "/demands", "expected numbers");
            job.demands.push_back(d.get<double>());
        }
        if (je.contains("preds")) {
            if (!je["preds"].is_array()) fail(path + "/preds", "expected array");
            for (const auto& p : je["preds"]) {
                if (!p.is_number_integer()) fail(path + "/preds", "expected integers");
                job.preds.push_back(p.get<int>());
            }
        }
        inst.jobs.push_back(std::move(job));
    }

    inst.rebuild_index();
    return inst;
}

std::string write_instance_json(const Instance& inst) {
    json root;
    root["T"] = inst.horizon;
    root["rate"] = inst.rate;
    root["semantics"] = to_string(inst.semantics);
    root["resources"] = json::array();
    for (const auto& r : inst.resources) {
        json rj;
        rj["id"] = r.id();
        if (r.is_constant())
            rj["availability"] = r.constant_rate();
        else
            rj["availability"] = r.vector_values();
        root["resources"].push_back(std::move(rj));
    }
    root["jobs"] = json::array();
    for (const auto& j : inst.jobs) {
        json jj;
        jj["id"] = j.id;
        jj["p"] = j.processing_time;
        jj["profit"] = j.profit;
        jj["demands"] = j.demands;
        jj["preds"] = j.preds;
        root["jobs"].push_back(std::move(jj));
    }
    return root.dump(2) + "\n";
}

AtSchedule parse_at_schedule_json(const std::string& text) {
    json root = parse_or_throw(text, "schedule");
    AtSchedule sched;
    const json* completions = &root;
    if (root.is_object() && root.contains("completion")) {
        completions = &root["completion"];
        if (root.contains("t_ext") && root["t_ext"].is_number_integer())
            sched.t_ext = root["t_ext"].get<int>();
    }
    if (!completions->is_object())
        throw StructuralError("schedule json must map job ids to completion periods");
    for (const auto& [key, value] : completions->items()) {
        if (!value.is_number_integer())
            throw StructuralError("schedule json: completion of job " + key +
                                  " must be an integer");
        sched.completion[std::stoi(key)] = value.get<int>();
    }
    for (const auto& [job, t] : sched.completion)
        sched.t_ext = std::max(sched.t_ext, t);
    return sched;
}

std::string write_at_schedule_json(const AtSchedule& sched) {
    json root;
    json c = json::object();
    for (const auto& [job, t] : sched.completion) c[std::to_string(job)] = t;
    root["completion"] = std::move(c);
    root["t_ext"] = sched.t_ext;
    return root.dump(2) + "\n";
}

AggSchedule parse_agg_schedule_json(const std::string& text) {
    json root = parse_or_throw(text, "interval schedule");
    AggSchedule agg;
    const json* intervals = &root;
    if (root.is_object() && root.contains("interval")) intervals = &root["interval"];
    if (!intervals->is_object())
        throw StructuralError("interval schedule json must map job ids to intervals");
    for (const auto& [key, value] : intervals->items()) {
        if (!value.is_number_integer())
            throw StructuralError("interval schedule json: job " + key +
                                  " must map to an integer");
        agg.interval[std::stoi(key)] = value.get<int>();
    }
    return agg;
}

std::string write_agg_schedule_json(const AggSchedule& agg) {
    json root;
    json c = json::object();
    for (const auto& [job, s] : agg.interval) c[std::to_string(job)] = s;
    root["interval"] = std::move(c);
    return root.dump(2) + "\n";
}

}  // namespace geomsched
