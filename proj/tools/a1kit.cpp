#include "a1kit/classifying.hpp"
#include "a1kit/grothendieck.hpp"
#include "a1kit/kotheory.hpp"
#include "a1kit/module.hpp"
#include "a1kit/module_io.hpp"
#include "a1kit/parallel.hpp"
#include "a1kit/toda.hpp"
#include "a1kit/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace a1kit;
using ordered_json = nlohmann::ordered_json;

namespace {

struct Range {
    int lo = 0, hi = 0;
};

Range parse_range(const std::string& s) {
    auto pos = s.find("..");
    if (pos == std::string::npos)
        throw CLI::ValidationError("range", "expected lo..hi, got '" + s + "'");
    Range r;
    r.lo = std::stoi(s.substr(0, pos));
    r.hi = std::stoi(s.substr(pos + 2));
    if (r.hi < r.lo) throw CLI::ValidationError("range", "empty range '" + s + "'");
    return r;
}

A1Module resolve_module(const std::string& in, const std::string& builtin, int N) {
    if (!in.empty()) return load_module(in);
    if (builtin.empty())
        throw CLI::ValidationError("module", "need --in FILE or --builtin NAME");
    if (builtin == "P") return build_P(N).mod;
    if (builtin == "R") return build_R(N).mod;
    if (builtin == "P0") return build_P0(N).mod;
    if (builtin == "joker" || builtin == "J") return build_joker().mod;
    if (builtin == "A1") return a1_as_module();
    if (builtin == "A1modA0") return build_a1_mod_a0().mod;
    if (builtin.rfind("Pn:", 0) == 0) return build_Pn(std::stoi(builtin.substr(3)), N).mod;
    if (builtin.rfind("bv:", 0) == 0) return bv_cohomology(std::stoi(builtin.substr(3)), N).mod;
    if (builtin == "PP") return tensor(build_P(N).mod, build_P(N).mod);
    throw CLI::ValidationError("module", "unknown builtin '" + builtin + "'");
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw std::runtime_error("cannot write " + out_path);
    f << text;
}

std::string dims_table(const A1Module& m) {
    std::ostringstream os;
    os << "degree  dim  reliable\n";
    for (int d = m.lo; d <= m.hi; ++d)
        if (m.dim(d))
            os << d << "\t" << m.dim(d) << "\t"
               << ((m.complete || d <= m.reliable_hi) ? "yes" : "no") << "\n";
    return os.str();
}

std::string homology_output(const BigradedDims& h, int rank, const std::string& format) {
    std::ostringstream os;
    if (format == "csv") {
        os << "level,degree,rank,dim,reliable\n";
        for (const auto& c : h.cells)
            os << c.n << "," << c.degree << "," << rank << "," << c.dim << ","
               << (c.reliable ? 1 : 0) << "\n";
    } else if (format == "json") {
        ordered_json j = ordered_json::array();
        for (const auto& c : h.cells)
            j.push_back({{"level", c.n},
                         {"degree", c.degree},
                         {"rank", rank},
                         {"dim", c.dim},
                         {"reliable", c.reliable}});
        os << j.dump(2) << "\n";
    } else {
        os << "level  degree  dim  reliable\n";
        for (const auto& c : h.cells)
            if (c.dim)
                os << c.n << "\t" << c.degree << "\t" << c.dim << "\t"
                   << (c.reliable ? "yes" : "no") << "\n";
    }
    return os.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"a1kit: graded A(1)-module calculator and KO-tower table generator"};
    app.require_subcommand(1);
    // applied as soon as the flag is parsed, ahead of any subcommand callback
    app.add_option_function<int>(
        "--threads", [](int n) { set_thread_count(n); },
        "worker threads (default: all cores, or A1KIT_THREADS)");

    std::string format = "table", out_path, in_path, builtin;
    int rank = 2, N = 24;
    std::string range_str = "-3..4", degree_str;
    std::uint64_t seed = 0x9E3779B97F4A7C15ull;

    int exit_code = 0;
    std::string output;

    // ---- a1 ----
    auto* a1cmd = app.add_subcommand("a1", "the algebra A(1)");
    auto* a1check = a1cmd->add_subcommand("check", "rebuild A(1), validate against the Adem oracle");
    a1check->callback([&] {
        const A1Basis& b = build_a1();
        std::ostringstream os;
        os << "A(1) ok: dimension 8, degrees";
        for (int i = 0; i < A1Basis::kDim; ++i) os << " " << b.degrees[i];
        os << "\nA(1)//A(0) degrees:";
        CyclicQuotientModule q = build_a1_mod_a0();
        for (int d = q.mod.lo; d <= q.mod.hi; ++d)
            if (q.mod.dim(d)) os << " " << d;
        os << "\nJoker degrees:";
        CyclicQuotientModule j = build_joker();
        for (int d = j.mod.lo; d <= j.mod.hi; ++d)
            if (j.mod.dim(d)) os << " " << d;
        os << "\n";
        output = os.str();
    });

    // ---- bv ----
    auto* bvcmd = app.add_subcommand("bv", "cohomology of elementary abelian 2-groups");
    auto* bvc = bvcmd->add_subcommand("cohomology", "build H(BV_r) as an A(1)-module");
    bvc->add_option("--rank", rank, "rank r")->required();
    bvc->add_option("--max-degree", N, "top degree");
    bvc->add_option("--format", format, "table|csv|json");
    bvc->add_option("--out", out_path, "output path");
    bvc->callback([&] {
        BVCohomology bv = bv_cohomology(rank, N);
        if (format == "json") output = module_to_json(bv.mod) + "\n";
        else output = dims_table(bv.mod);
    });

    // ---- module ----
    auto* modcmd = app.add_subcommand("module", "operations on A(1)-modules");
    auto add_module_opts = [&](CLI::App* c) {
        c->add_option("--in", in_path, "module JSON file");
        c->add_option("--builtin", builtin, "P|R|P0|Pn:k|joker|A1|A1modA0|bv:r|PP");
        c->add_option("--max-degree", N, "window top for builtins");
        c->add_option("--out", out_path, "output path");
    };
    std::string qop = "q0";
    auto* mm = modcmd->add_subcommand("margolis", "Margolis homology");
    add_module_opts(mm);
    mm->add_option("--q", qop, "q0|q1");
    mm->callback([&] {
        A1Module m = resolve_module(in_path, builtin, N);
        MargolisHomology h = margolis(m, qop == "q1" ? MargolisOp::Q1 : MargolisOp::Q0);
        std::ostringstream os;
        os << "degree  dim  reliable\n";
        for (const auto& [d, v] : h.dims)
            os << d << "\t" << v << "\t"
               << ((d >= h.reliable_lo && d <= h.reliable_hi) ? "yes" : "no") << "\n";
        if (h.dims.empty()) os << "(zero on " << h.reliable_lo << ".." << h.reliable_hi << ")\n";
        output = os.str();
    });
    auto* ms = modcmd->add_subcommand("syzygy", "kernel of the minimal free cover");
    add_module_opts(ms);
    ms->callback([&] {
        A1Module m = syzygy(resolve_module(in_path, builtin, N));
        output = out_path.empty() ? dims_table(m) : module_to_json(m) + "\n";
    });
    auto* msf = modcmd->add_subcommand("split-free", "strip the maximal free summand");
    add_module_opts(msf);
    msf->callback([&] {
        SplitFreeResult r = split_free(resolve_module(in_path, builtin, N));
        std::ostringstream os;
        os << "free generators by degree:";
        for (const auto& [d, k] : r.free_generators) os << " " << d << ":" << k;
        os << "\nresidual dims:\n" << dims_table(r.residual);
        output = out_path.empty() ? os.str() : module_to_json(r.residual) + "\n";
    });
    std::string path_a, path_b, builtin_a, builtin_b;
    auto* meq = modcmd->add_subcommand("stable-equal", "compare up to free summands");
    meq->add_option("--a", path_a, "first module JSON");
    meq->add_option("--b", path_b, "second module JSON");
    meq->add_option("--builtin-a", builtin_a, "first builtin");
    meq->add_option("--builtin-b", builtin_b, "second builtin");
    meq->add_option("--max-degree", N, "window top for builtins");
    meq->add_option("--seed", seed, "iso-search seed");
    meq->callback([&] {
        A1Module a = resolve_module(path_a, builtin_a, N);
        A1Module b = resolve_module(path_b, builtin_b, N);
        StableVerdict v = stable_equal(a, b, seed);
        switch (v.kind) {
            case StableVerdict::Kind::Equal: output = "EQUAL\n"; break;
            case StableVerdict::Kind::MargolisEqual: output = "MARGOLIS-EQUAL\n"; break;
            case StableVerdict::Kind::NotEqual:
                output = "NOT EQUAL (witness degree " + std::to_string(v.witness_degree) + ": " +
                         v.detail + ")\n";
                exit_code = 1;
                break;
            default:
                output = "UNDECIDED (" + v.detail + ")\n";
                exit_code = 1;
        }
    });

    // ---- toda ----
    auto* toda = app.add_subcommand("toda", "the fundamental cochain complex");
    auto* th = toda->add_subcommand("homology", "bigraded homology on H(BV_r)");
    th->add_option("--rank", rank, "rank r")->required();
    th->add_option("--max-degree", N, "module window top");
    th->add_option("--range", range_str, "cohomological index range n0..n1");
    th->add_option("--degrees", degree_str, "internal degree range d0..d1");
    th->add_option("--format", format, "table|csv|json");
    th->add_option("--out", out_path, "output path");
    th->callback([&] {
        Range nr = parse_range(range_str);
        Range dr = degree_str.empty() ? Range{-8, N - 10} : parse_range(degree_str);
        BVCohomology bv = bv_cohomology(rank, N);
        CochainComplex c(bv.mod, nr.lo, nr.hi);
        BigradedDims h = homology(c, dr.lo, dr.hi);
        output = homology_output(h, rank, format);
    });
    auto* td = toda->add_subcommand("decalage", "syzygy shift of the homology");
    add_module_opts(td);
    td->callback([&] {
        A1Module m = resolve_module(in_path, builtin.empty() ? "P" : builtin, N);
        DecalageReport rep = decalage_check(m, -2, 5, -8, N / 2);
        std::ostringstream os;
        if (!rep.hypothesis_ok) {
            os << "FAIL: not Q0-acyclic (degree " << rep.hypothesis_witness << ")\n";
            exit_code = 1;
        } else if (!rep.mismatches.empty()) {
            os << "FAIL: " << rep.mismatches.size() << " mismatching cells of "
               << rep.cells_compared << "\n";
            exit_code = 1;
        } else {
            os << "PASS: " << rep.cells_compared << " cells\n";
        }
        output = os.str();
    });

    // ---- gk ----
    auto* gk = app.add_subcommand("gk", "Grothendieck-group calculators");
    std::string dims_csv;
    bool generalized = false;
    auto* gd = gk->add_subcommand("decompose", "binomial-basis decomposition of a dim sequence");
    gd->add_option("--dims", dims_csv, "comma-separated dims at ranks 0,1,2,...")->required();
    gd->add_flag("--generalized", generalized, "allow multiplicities outside {0,1}");
    gd->callback([&] {
        DimSequence s;
        std::stringstream ss(dims_csv);
        std::string tok;
        while (std::getline(ss, tok, ',')) s.values.push_back(std::stoll(tok));
        NewtonResult r = newton_decompose(s, !generalized);
        std::ostringstream os;
        if (!r.ok) {
            os << "FAIL: " << r.error << "\n";
            exit_code = 1;
        } else {
            os << "[F] =";
            bool any = false;
            for (const auto& [i, mlt] : r.cls.multiplicity) {
                os << (any ? " + " : " ");
                if (mlt != 1) os << mlt << "*";
                os << "Lambda^" << i;
                any = true;
            }
            if (!any) os << " 0";
            os << "\n";
        }
        output = os.str();
    });
    int fig_n = 0, fig_d = 0;
    auto* gf = gk->add_subcommand("figure2", "closed-form homology table entry");
    gf->add_option("--n", fig_n, "level")->required();
    gf->add_option("--d", fig_d, "degree")->required();
    gf->add_option("--rank", rank, "rank r")->required();
    gf->callback([&] {
        output = std::to_string(figure2_dims(fig_n, fig_d, rank)) + "\n";
    });

    // ---- ko ----
    auto* ko = app.add_subcommand("ko", "connective KO-tower tables");
    auto add_ko_opts = [&](CLI::App* c) {
        c->add_option("--rank", rank, "rank r")->required();
        c->add_option("--max-degree", N, "module window top");
        c->add_option("--format", format, "table|csv|json");
        c->add_option("--out", out_path, "output path");
    };
    auto* ktu = ko->add_subcommand("tu", "dimensions of TU = Im(Q0 Q1)");
    add_ko_opts(ktu);
    ktu->callback([&] {
        TUSpace t = tu_space(rank, N);
        std::ostringstream os;
        if (format == "csv") {
            os << "degree,rank,dim\n";
            for (const auto& [d, s] : t.tu) os << d << "," << rank << "," << s.dim() << "\n";
        } else {
            os << "degree  dim\n";
            for (const auto& [d, s] : t.tu) os << d << "\t" << s.dim() << "\n";
        }
        output = os.str();
    });
    auto* ksq = ko->add_subcommand("sq2h", "Sq2-homology of TU");
    add_ko_opts(ksq);
    ksq->callback([&] {
        Sq2Homology h = sq2_homology(tu_space(rank, N));
        std::ostringstream os;
        os << "degree  dim\n";
        for (const auto& [d, v] : h.dims) os << d << "\t" << v << "\n";
        if (h.dims.empty()) os << "(zero)\n";
        output = os.str();
    });
    auto* kst = ko->add_subcommand("st", "dimensions of ST = Im(Sq2 on TU)");
    add_ko_opts(kst);
    kst->callback([&] {
        TUSpace t = tu_space(rank, N);
        std::ostringstream os;
        os << "degree  dim\n";
        for (const auto& [d, s] : st_space(t)) os << d << "\t" << s.dim() << "\n";
        output = os.str();
    });
    auto* ktab = ko->add_subcommand("tables", "KO{n}(BV_r) short-exact-sequence reports");
    add_ko_opts(ktab);
    ktab->add_option("--level-range", range_str, "level range n0..n1");
    ktab->add_option("--degrees", degree_str, "degree range d0..d1");
    ktab->callback([&] {
        Range nr = parse_range(range_str.find("..") == std::string::npos ? "0..3" : range_str);
        Range dr = degree_str.empty() ? Range{0, 16} : parse_range(degree_str);
        BVCohomology bv = bv_cohomology(rank, N);
        std::ostringstream os;
        if (format == "json") {
            ordered_json arr = ordered_json::array();
            for (int n = nr.lo; n <= nr.hi; ++n)
                for (int d = dr.lo; d <= dr.hi; ++d) {
                    KOTableReport r = ses_report(bv.mod, n, d, rank);
                    ordered_json j{{"level", r.level}, {"degree", r.degree}, {"rank", r.rank},
                                   {"qo", r.qo.str()},
                                   {"consistent", r.consistent}};
                    if (r.torsion_dim) j["torsion_dim"] = *r.torsion_dim;
                    arr.push_back(j);
                }
            os << arr.dump(2) << "\n";
        } else {
            os << "level  degree  qo  torsion  consistent\n";
            for (int n = nr.lo; n <= nr.hi; ++n)
                for (int d = dr.lo; d <= dr.hi; ++d) {
                    KOTableReport r = ses_report(bv.mod, n, d, rank);
                    os << n << "\t" << d << "\t" << r.qo.str() << "\t"
                       << (r.torsion_dim ? std::to_string(*r.torsion_dim) : "?") << "\t"
                       << (r.consistent ? "yes" : "NO") << "\n";
                }
        }
        output = os.str();
    });
    auto* kdet = ko->add_subcommand("detect", "detection consistency check");
    add_ko_opts(kdet);
    kdet->add_option("--range", range_str, "level range n0..n1");
    kdet->add_option("--degrees", degree_str, "degree range d0..d1");
    kdet->callback([&] {
        Range nr = parse_range(range_str);
        Range dr = degree_str.empty() ? Range{-8, std::min(24, N - 10)} : parse_range(degree_str);
        DetectionReport rep = detection_check(rank, N, nr.lo, nr.hi, dr.lo, dr.hi);
        std::ostringstream os;
        if (rep.pass()) {
            os << "PASS: " << rep.cells_checked << " cells, zero mismatches\n";
        } else {
            os << "FAIL: " << rep.mismatches.size() << " mismatches of " << rep.cells_checked
               << " cells" << (rep.ko_totals_ok ? "" : "; KO totals differ") << "\n";
            for (const auto& mm : rep.mismatches)
                os << "  (" << mm.n << "," << mm.d << "): homology " << mm.homology << ", table "
                   << mm.figure2 << ", qo " << mm.qo_quotient << "\n";
            exit_code = 1;
        }
        output = os.str();
    });

    // ---- verify ----
    auto* ver = app.add_subcommand("verify", "acceptance battery");
    std::string which = "all";
    int ver_level = -1, ver_N = 0;
    ver->add_option("name", which,
                    "all|algebra|homology-p|figure2|pn-splitting|periodicity|kunneth|joker|sq2h|"
                    "exact-couple|detection|properties");
    ver->add_option("--n", ver_level, "single level for the periodicity check");
    ver->add_option("--max-degree", ver_N, "window override for the periodicity check");
    ver->callback([&] {
        std::vector<CriterionResult> results;
        if (which == "periodicity" && ver_level >= 0) {
            int N = ver_N > 0 ? ver_N : 8 * (ver_level + 4) + 16;
            StableVerdict v = stable_equal(build_Pn(ver_level + 4, N).mod,
                                           suspend(build_Pn(ver_level, N).mod, 8));
            std::printf("[%s] P_%d vs Sigma^8 P_%d\n", v.equal() ? "PASS" : "FAIL",
                        ver_level + 4, ver_level);
            if (!v.equal()) exit_code = 1;
            return;
        }
        if (which == "all") results = verify_all();
        else if (which == "algebra") results = {verify_algebra()};
        else if (which == "homology-p") results = {verify_homology_P()};
        else if (which == "figure2") results = {verify_figure2()};
        else if (which == "pn-splitting") results = {verify_pn_splitting()};
        else if (which == "periodicity") results = {verify_periodicity()};
        else if (which == "joker") results = {verify_joker()};
        else if (which == "kunneth") {
            KunnethReport r2 = kunneth_check(2, 36), r3 = kunneth_check(3, 36);
            std::printf("[%s] kunneth r=2 (%d cells)\n", r2.pass() ? "PASS" : "FAIL", r2.cells_compared);
            std::printf("[%s] kunneth r=3 (%d cells)\n", r3.pass() ? "PASS" : "FAIL", r3.cells_compared);
            if (!r2.pass() || !r3.pass()) exit_code = 1;
            return;
        }
        else if (which == "sq2h") results = {verify_sq2_homology()};
        else if (which == "exact-couple") results = {verify_couple()};
        else if (which == "detection") results = {verify_detection()};
        else if (which == "properties") results = {verify_properties()};
        else throw CLI::ValidationError("verify", "unknown suite '" + which + "'");
        if (print_results(results) > 0) exit_code = 1;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;   // usage errors exit 2; --help exits 0
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    try {
        if (!output.empty()) emit(output, out_path);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return exit_code;
}
