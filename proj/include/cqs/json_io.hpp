#pragma once

// JSON encodings: dual-graph models, classification results, MMP traces.

#include <json.hpp>

#include "mmp.hpp"

namespace cqs {

using nlohmann::json;

inline json int_json(const Int& v) {
    if (v >= std::numeric_limits<std::int64_t>::min() &&
        v <= std::numeric_limits<std::int64_t>::max())
        return json(static_cast<std::int64_t>(v));
    return json(v.str());
}

inline Int int_from(const json& j) {
    if (j.is_string()) return Int(j.get<std::string>());
    require(j.is_number_integer(), "json: expected an integer");
    return Int(j.get<std::int64_t>());
}

inline json rat_json(const Rat& v) {
    return json(v.str());  // exact "p/q" (or "p") form
}

inline json cqs_json(const CQS& s) {
    return json{{"Delta", int_json(s.Delta)}, {"Omega", int_json(s.Omega)}};
}

inline json wahl_json(const WahlData& w) {
    return json{{"m", int_json(w.m)}, {"a", int_json(w.a)}};
}

inline json cf_json(const CFrac& cf) {
    json a = json::array();
    for (const Int& v : cf) a.push_back(int_json(v));
    return a;
}

inline json presolution_json(const PResolution& p) {
    return json{{"target", cqs_json(p.target)},
                {"pair", json::array({p.ww.first, p.ww.second})},
                {"sing1", wahl_json(p.sing1)},
                {"sing2", wahl_json(p.sing2)},
                {"c", int_json(p.c)},
                {"delta", int_json(p.delta)},
                {"k_dot_cplus", rat_json(p.k_dot_cplus())},
                {"cplus_sq", rat_json(p.cplus_sq())}};
}

inline json k2a_json(const K2A& n) {
    return json{{"m1", int_json(n.m1)}, {"a1", int_json(n.a1)},
                {"m2", int_json(n.m2)}, {"a2", int_json(n.a2)},
                {"delta", int_json(n.delta)}, {"Delta", int_json(n.Delta)}};
}

inline json k1a_json(const K1A& k) {
    return json{{"m1", int_json(k.w.m)}, {"a1", int_json(k.w.a)},
                {"i", k.i},
                {"m0", int_json(k.m0)}, {"a0", int_json(k.a0)},
                {"m2", int_json(k.m2)}, {"a2", int_json(k.a2)},
                {"delta", int_json(k.delta)},
                {"target", cqs_json(k.target)}};
}

inline json model_json(const DualGraphModel& g) {
    json curves = json::array();
    for (const Curve& c : g.curves) {
        json jc{{"id", c.id}, {"self_int", int_json(c.self_int)}};
        if (c.genus != 0) jc["genus"] = int_json(c.genus);
        if (!c.label.empty()) jc["label"] = c.label;
        curves.push_back(std::move(jc));
    }
    json edges = json::array();
    for (const Edge& e : g.edges) {
        json je{{"a", e.a}, {"b", e.b}};
        if (e.mult != 1) je["mult"] = int_json(e.mult);
        edges.push_back(std::move(je));
    }
    json chains = json::array();
    for (const auto& ch : g.chains) chains.push_back(ch);
    json out{{"curves", curves}, {"edges", edges}, {"chains", chains}};
    if (g.flip_mark) out["flip_mark"] = *g.flip_mark;
    return out;
}

inline DualGraphModel model_from_json(const json& j) {
    require(j.is_object() && j.contains("curves"), "model json: missing curves");
    DualGraphModel g;
    for (const json& jc : j.at("curves")) {
        Curve c;
        c.id = jc.at("id").get<long>();
        c.self_int = int_from(jc.at("self_int"));
        if (jc.contains("genus")) c.genus = int_from(jc.at("genus"));
        if (jc.contains("label")) c.label = jc.at("label").get<std::string>();
        g.curves.push_back(std::move(c));
    }
    if (j.contains("edges"))
        for (const json& je : j.at("edges")) {
            Edge e;
            e.a = je.at("a").get<long>();
            e.b = je.at("b").get<long>();
            e.mult = je.contains("mult") ? int_from(je.at("mult")) : Int(1);
            g.edges.push_back(std::move(e));
        }
    if (j.contains("chains"))
        for (const json& jc : j.at("chains"))
            g.chains.push_back(jc.get<std::vector<long>>());
    if (j.contains("flip_mark")) g.flip_mark = j.at("flip_mark").get<long>();
    return g;
}

inline json step_json(const StepRecord& r) {
    json out{{"curve_id", r.curve_id},
             {"kind", r.kind == NKind::flipping ? "flip" : "divisorial"},
             {"target", cqs_json(r.target)},
             {"kc_before", rat_json(r.kc_before)},
             {"blowdowns", r.blowdowns},
             {"blowups", r.blowups},
             {"before", model_json(r.before)},
             {"after", model_json(r.after)}};
    if (r.kc_after) out["kc_after"] = rat_json(*r.kc_after);
    json nb;
    if (r.nbhd_k1a)
        nb = json{{"type", "k1A"}, {"data", k1a_json(*r.nbhd_k1a)}};
    else
        nb = json{{"type", "k2A"}, {"data", k2a_json(*r.nbhd_k2a)}};
    out["neighborhood"] = std::move(nb);
    return out;
}

inline json trace_json(const RunResult& r) {
    json steps = json::array();
    for (const StepRecord& s : r.steps) steps.push_back(step_json(s));
    json rejected = json::array();
    for (const Rejection& x : r.final_report.rejected)
        rejected.push_back(json{{"curve_id", x.curve_id}, {"reason", x.reason}});
    return json{{"steps", steps},
                {"final", model_json(r.final_model)},
                {"final_rejections", rejected}};
}

}  // namespace cqs
