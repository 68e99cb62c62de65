// CLI over the classification, division-algorithm, fan and MMP modules.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "cqs/fanfam.hpp"
#include "cqs/json_io.hpp"

namespace {

using namespace cqs;

CFrac parse_cf(const std::string& s) {
    CFrac out;
    std::string cur;
    for (char ch : s + ",") {
        if (ch == ',') {
            require(!cur.empty(), "empty entry in comma-separated list");
            out.push_back(Int(cur));
            cur.clear();
        } else
            cur.push_back(ch);
    }
    return out;
}

std::string cf_str(const CFrac& cf) {
    std::string s = "[";
    for (size_t i = 0; i < cf.size(); ++i) {
        if (i) s += ",";
        s += cf[i].str();
    }
    return s + "]";
}

std::string wahl_str(const WahlData& w) {
    if (w.smooth()) return "smooth";
    return "(" + w.m.str() + "," + w.a.str() + ")";
}

std::string cqs_str(const CQS& s) { return s.Delta.str() + "/" + s.Omega.str(); }

void print_presolution(std::ostream& o, const PResolution& p, const std::string& pad) {
    o << pad << "pair (" << p.ww.first << "," << p.ww.second << "): sing1 = "
      << wahl_str(p.sing1) << ", sing2 = " << wahl_str(p.sing2)
      << ", delta = " << p.delta << ", c = " << p.c
      << ", K.C+ = " << p.k_dot_cplus() << ", C+^2 = " << p.cplus_sq() << "\n";
}

PResolution pick_resolution(const CQS& s, int alpha, int beta) {
    for (const PResolution& p : extremal_presolutions(s))
        if (p.ww.first == alpha && p.ww.second == beta) return p;
    throw domain_error("no extremal P-resolution with lowered pair (" +
                       std::to_string(alpha) + "," + std::to_string(beta) + ")");
}

std::pair<int, int> parse_pair(const std::string& s) {
    auto c = s.find(',');
    require(c != std::string::npos, "expected a comma-separated pair");
    return {std::stoi(s.substr(0, c)), std::stoi(s.substr(c + 1))};
}

void print_flip(std::ostream& o, const FlipResult& f) {
    if (f.kind == NKind::flipping) {
        o << "kind: flipping\n";
        print_presolution(o, *f.pres, "");
        o << "target: " << cqs_str(*f.target_raw) << " (normalized "
          << cqs_str(*f.target) << ")\n";
    } else {
        o << "kind: divisorial\n";
        o << "new point on Y: " << wahl_str(*f.y_point);
        if (!f.y_point->smooth())
            o << " = 1/" << (f.y_point->m * f.y_point->m) << "(1,"
              << (f.y_point->m * f.y_point->a - 1) << ")";
        o << "\n";
    }
}

int run(int argc, char** argv) {
    CLI::App app{"exact computations for extremal P-resolutions, semistable flips and dual-graph MMP"};
    app.require_subcommand(1);

    // hjcf
    auto* hjcf = app.add_subcommand("hjcf", "Hirzebruch-Jung continued fractions");
    hjcf->require_subcommand(1);
    std::string hn, ha;
    auto* hexp = hjcf->add_subcommand("expand", "expand N/A");
    hexp->add_option("N", hn)->required();
    hexp->add_option("A", ha)->required();
    auto* hksq = hjcf->add_subcommand("ksq", "K^2 formulas for 1/N(1,A)");
    hksq->add_option("N", hn)->required();
    hksq->add_option("A", ha)->required();

    // zerocf
    auto* zc = app.add_subcommand("zerocf", "zero continued fractions");
    zc->require_subcommand(1);
    std::string zlist;
    auto* zchk = zc->add_subcommand("check", "test whether [V1,...,Vr] is a zero CF");
    zchk->add_option("entries", zlist, "comma-separated entries")->required();

    // presolve
    auto* ps = app.add_subcommand("presolve", "extremal P-resolutions");
    std::string pd, po, pmax;
    bool pjson = false, ptrivial = false;
    ps->add_option("DELTA", pd);
    ps->add_option("OMEGA", po);
    ps->add_flag("--json", pjson);
    auto* psv = ps->add_subcommand("survey", "all singularities up to a bound");
    psv->add_option("MAX", pmax)->required();
    psv->add_flag("--include-trivial", ptrivial);

    // mori
    auto* mo = app.add_subcommand("mori", "division algorithm on extremal neighborhoods");
    mo->require_subcommand(1);
    std::string m1, a1, m2, a2, km, ka;
    long ki = 0;
    auto* mf = mo->add_subcommand("flip", "flip/contract a k2A neighborhood");
    mf->add_option("M1", m1)->required();
    mf->add_option("A1", a1)->required();
    mf->add_option("M2", m2)->required();
    mf->add_option("A2", a2)->required();
    auto* mk = mo->add_subcommand("k1a", "k1A neighborhood on the chain of (M,A) at position I");
    mk->add_option("M", km)->required();
    mk->add_option("A", ka)->required();
    mk->add_option("I", ki)->required();

    // fan
    auto* fa = app.add_subcommand("fan", "toric fan of the universal family base");
    fa->require_subcommand(1);
    std::string fd, fo;
    long fdepth = 4;
    bool fdot = false;
    std::string fpair;
    auto* fb = fa->add_subcommand("build", "rays of the fan for DELTA");
    fb->add_option("DELTA", fd)->required();
    fb->add_option("--depth", fdepth)->required();
    fb->add_flag("--dot", fdot);
    auto* ff = fa->add_subcommand("family", "k1A/k2A members of the antiflip family");
    ff->add_option("DELTA", fd)->required();
    ff->add_option("OMEGA", fo)->required();
    ff->add_option("--pair", fpair, "lowered index pair ALPHA,BETA")->required();
    ff->add_option("--depth", fdepth)->required();

    // antiflip
    auto* af = app.add_subcommand("antiflip", "terminal antiflip existence");
    std::string ad, ao, apair, abd;
    std::vector<std::string> axv;
    af->add_option("DELTA", ad)->required();
    af->add_option("OMEGA", ao)->required();
    af->add_option("--pair", apair, "lowered index pair A,B")->required();
    af->add_option("--ax", axv, "axial multiplicities A1 A2")->required()->expected(2);
    af->add_option("--boundary-divisor", abd)->required()->check(CLI::IsMember({"yes", "no"}));

    // mmp
    auto* mm = app.add_subcommand("mmp", "dual-graph minimal model program");
    mm->require_subcommand(1);
    std::string gpath, tpath, dotdir;
    auto* mr = mm->add_subcommand("run", "run the MMP on a dual-graph model");
    mr->add_option("graph", gpath, "model JSON file")->required();
    mr->add_option("--trace", tpath, "write the step trace as JSON");
    mr->add_option("--dot-dir", dotdir, "write DOT snapshots into this directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    std::ostream& o = std::cout;
    if (hexp->parsed()) {
        CFrac cf = hj_expand(Int(hn), Int(ha));
        o << hn << "/" << ha << " = " << cf_str(cf) << "\n";
    } else if (hksq->parsed()) {
        o << "K^2 of the minimal resolution germ: " << ksq_minres(Int(hn), Int(ha)) << "\n";
        o << "(K+D)^2 of the pair germ: " << ksq_pair(Int(hn), Int(ha)) << "\n";
    } else if (zchk->parsed()) {
        CFrac cf = parse_cf(zlist);
        o << cf_str(cf) << (is_zero_cf(cf) ? " is" : " is not")
          << " a zero continued fraction\n";
    } else if (psv->parsed()) {
        auto sv = survey(Int(pmax), ptrivial);
        long nres = 0;
        for (const SurveyEntry& e : sv) {
            o << cqs_str(e.sing) << " " << cf_str(e.chain)
              << (e.trivial_family ? " (trivial family)" : "") << "\n";
            for (const PResolution& p : e.resolutions) {
                print_presolution(o, p, "  ");
                ++nres;
            }
        }
        o << sv.size() << " singularities, " << nres << " extremal P-resolutions\n";
    } else if (ps->parsed()) {
        require(!pd.empty() && !po.empty(), "presolve needs DELTA and OMEGA");
        CQS s = cqs_new(Int(pd), Int(po));
        auto res = extremal_presolutions(s);
        if (pjson) {
            json arr = json::array();
            for (const PResolution& p : res) arr.push_back(presolution_json(p));
            o << arr.dump(2) << "\n";
        } else {
            o << "1/" << pd << "(1," << po << "): " << res.size()
              << " extremal P-resolution(s)\n";
            for (const PResolution& p : res) print_presolution(o, p, "  ");
        }
    } else if (mf->parsed()) {
        K2A n = k2a_new(Int(m1), Int(a1), Int(m2), Int(a2));
        MoriData md = mori_division(n);
        o << "k2A (" << n.m1 << "," << n.a1 << "),(" << n.m2 << "," << n.a2
          << "): delta = " << n.delta << ", Delta = " << n.Delta
          << ", K.C = " << n.k_dot_c() << "\n";
        o << "division: k = " << md.k << ", d = (";
        for (long i = 1; i <= md.k; ++i) o << (i > 1 ? "," : "") << md.d(i);
        o << "), c = (";
        for (long i = 1; i <= md.k; ++i) o << (i > 1 ? "," : "") << md.c(i);
        o << ")\n";
        print_flip(o, flip(n));
    } else if (mk->parsed()) {
        K1A k = k1a_from(wahl_new(Int(km), Int(ka)), ki);
        o << "k1A on " << wahl_str(k.w) << " = " << cf_str(k.chain)
          << " at position " << k.i << "\n";
        o << "m0 = " << k.m0 << ", a0 = " << k.a0 << ", m2 = " << k.m2
          << ", a2 = " << k.a2 << ", delta = " << k.delta
          << ", K.C = " << k.k_dot_c() << "\n";
        o << "contraction: " << cqs_str(k.target) << "\n";
        auto [x0, x1] = k1a_degenerations(k);
        o << "degenerations: (" << x0.m1 << "," << x0.a1 << "," << x0.m2 << ","
          << x0.a2 << ") and (" << x1.m1 << "," << x1.a1 << "," << x1.m2 << ","
          << x1.a2 << ")\n";
        print_flip(o, flip_k1a(k));
    } else if (fb->parsed()) {
        Fan fan = fan_build(Int(fd), fdepth);
        if (fdot) {
            o << "graph fan {\n";
            for (const auto& [i, v] : fan.rays)
                o << "  r" << (i < 0 ? "m" + std::to_string(-i) : std::to_string(i))
                  << " [label=\"v" << i << " = (" << v[0] << "," << v[1] << ")\"];\n";
            std::vector<long> idx;
            for (const auto& [i, v] : fan.rays) idx.push_back(i);
            std::sort(idx.begin(), idx.end());
            for (size_t j = 0; j + 1 < idx.size(); ++j) {
                long a = idx[j], b = idx[j + 1];
                if (fan.delta > 1 && a == -1 && b == 1) continue;  // axes are not a cone
                auto nm = [](long i) {
                    return std::string("r") +
                           (i < 0 ? "m" + std::to_string(-i) : std::to_string(i));
                };
                o << "  " << nm(a) << " -- " << nm(b) << ";\n";
            }
            o << "}\n";
        } else {
            for (const auto& [i, v] : fan.rays)
                o << "v" << i << " = (" << v[0] << "," << v[1] << ")\n";
        }
    } else if (ff->parsed()) {
        auto [alpha, beta] = parse_pair(fpair);
        PResolution p = pick_resolution(cqs_new(Int(fd), Int(fo)), alpha, beta);
        auto fam = family_enumerate(p, fdepth);
        for (const FamilyMember& m : fam) {
            if (m.location.kind == ConeRef::Kind::cone)
                o << "cone (" << m.location.i << "," << m.location.j << "): k2A ("
                  << m.k2a->m1 << "," << m.k2a->a1 << "," << m.k2a->m2 << ","
                  << m.k2a->a2 << ")\n";
            else
                o << "ray " << m.location.i << ": singularity " << wahl_str(*m.sing)
                  << "\n";
        }
    } else if (af->parsed()) {
        auto [alpha, beta] = parse_pair(apair);
        PResolution p = pick_resolution(cqs_new(Int(ad), Int(ao)), alpha, beta);
        AntiflipClass c = antiflip_classify(p, Int(axv[0]), Int(axv[1]), abd == "yes");
        switch (c) {
            case AntiflipClass::Terminal:
                o << "terminal antiflip exists\n";
                break;
            case AntiflipClass::CanonicalOnly:
                o << "no terminal antiflip (canonical only)\n";
                break;
            case AntiflipClass::NoBoundaryData:
                o << "undecidable without a boundary divisor\n";
                break;
        }
    } else if (mr->parsed()) {
        std::ifstream in(gpath);
        require(in.good(), "cannot open " + gpath);
        json j = json::parse(in);
        DualGraphModel g = model_from_json(j);
        RunResult r = mmp_run(g);
        for (const StepRecord& s : r.steps) {
            o << "step " << (&s - r.steps.data() + 1) << ": "
              << (s.kind == NKind::flipping ? "flip" : "divisorial contraction")
              << " at curve " << s.curve_id << ", target " << cqs_str(s.target)
              << ", K.C " << s.kc_before << " -> "
              << (s.kc_after ? s.kc_after->str() : std::string("(removed)")) << "\n";
        }
        o << r.steps.size() << " step(s); final model has " << r.final_model.curves.size()
          << " curve(s), " << r.final_model.chains.size() << " chain(s)\n";
        if (!tpath.empty()) {
            std::ofstream tf(tpath);
            tf << trace_json(r).dump(2) << "\n";
        }
        if (!dotdir.empty()) {
            std::filesystem::create_directories(dotdir);
            for (size_t i = 0; i < r.steps.size(); ++i) {
                std::ofstream b(dotdir + "/step_" + std::to_string(i + 1) + "_before.dot");
                b << export_dot(r.steps[i].before);
                std::ofstream a(dotdir + "/step_" + std::to_string(i + 1) + "_after.dot");
                a << export_dot(r.steps[i].after);
            }
            std::ofstream f(dotdir + "/final.dot");
            f << export_dot(r.final_model);
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const cqs::inconsistency_error& e) {
        std::cerr << "inconsistency: " << e.what() << "\n";
        return 2;
    } catch (const cqs::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
