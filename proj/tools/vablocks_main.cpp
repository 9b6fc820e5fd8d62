#include <CLI11.hpp>

#include <iostream>
#include <memory>
#include <random>

#include "vablocks/correspondence.hpp"
#include "vablocks/heisenberg.hpp"
#include "vablocks/io.hpp"

using namespace vablocks;

namespace {

struct Output {
    std::string format = "text";
    std::string path;
    json payload = json::object();
    std::vector<std::string> lines;

    void line(const std::string& s) { lines.push_back(s); }

    int flush(bool ok) {
        payload["pass"] = ok;
        std::string text;
        if (format == "json") {
            text = payload.dump(2) + "\n";
        } else {
            for (const auto& l : lines) text += l + "\n";
            text += ok ? "PASS\n" : "FAIL\n";
        }
        if (path.empty()) {
            std::cout << text;
        } else {
            std::ofstream f(path);
            if (!f) throw ParseError(path + ": cannot open for writing");
            f << text;
        }
        return ok ? 0 : 1;
    }
};

TruncatedVOA resolve_voa(const std::string& spec, int l_max) {
    if (spec == "heisenberg") return heisenberg_voa(l_max);
    return load_voa(load_json_file(spec));
}

LogModule resolve_module(const std::string& spec, const TruncatedVOA& voa, int l_mod) {
    if (spec.rfind("fock:", 0) == 0)
        return fock_module(voa, scalar_from_string(spec.substr(5)), l_mod);
    if (spec.rfind("logfock:", 0) == 0)
        return log_fock_module(voa, scalar_from_string(spec.substr(8)), l_mod);
    if (spec == "vacuum") return fock_module(voa, Scalar(0), l_mod);
    return load_module(load_json_file(spec), voa, spec);
}

void report(Output& out, const std::string& name, const CheckReport& rep, bool& ok) {
    out.payload["checks"].push_back(check_report_json(name, rep));
    std::string s = name + ": " + (rep.pass() ? "ok" : "FAILED") + " (" +
                    std::to_string(rep.checked) + " checked, " + std::to_string(rep.skipped) +
                    " skipped)";
    out.line(s);
    if (!rep.pass())
        for (const auto& f : rep.failures) out.line("  " + f);
    ok = ok && rep.pass();
}

CheckReport voa_borcherds_sweep(const TruncatedVOA& v, long bound, long samples) {
    CheckReport rep;
    std::vector<std::array<int, 6>> basis_triples;
    for (int wa = 0; wa <= v.l_max(); ++wa)
        for (int ia = 0; ia < v.dim(wa); ++ia)
            for (int wb = 0; wb <= v.l_max(); ++wb)
                for (int ib = 0; ib < v.dim(wb); ++ib)
                    for (int wc = 0; wc <= v.l_max(); ++wc)
                        for (int ic = 0; ic < v.dim(wc); ++ic)
                            basis_triples.push_back({wa, ia, wb, ib, wc, ic});
    auto run_one = [&](const std::array<int, 6>& t, long p, long q, long r) {
        if (!borcherds_checkable(v.l_max(), v.l_max(), t[0], t[2], t[4], p, q, r)) {
            ++rep.skipped;
            return;
        }
        ++rep.checked;
        GradedVector res =
            check_borcherds(v, p, q, r, GradedVector::unit(t[0], t[1]),
                            GradedVector::unit(t[2], t[3]), GradedVector::unit(t[4], t[5]));
        if (!res.is_zero())
            rep.fail("Borcherds identity fails at a=" + v.basis_name(t[0], t[1]) + " b=" +
                     v.basis_name(t[2], t[3]) + " c=" + v.basis_name(t[4], t[5]) + " (p,q,r)=(" +
                     std::to_string(p) + "," + std::to_string(q) + "," + std::to_string(r) + ")");
    };
    if (samples > 0) {
        std::mt19937_64 rng(20240811);
        for (long i = 0; i < samples; ++i) {
            const auto& t = basis_triples[rng() % basis_triples.size()];
            long p = static_cast<long>(rng() % (2 * bound + 1)) - bound;
            long q = static_cast<long>(rng() % (2 * bound + 1)) - bound;
            long r = static_cast<long>(rng() % (2 * bound + 1)) - bound;
            run_one(t, p, q, r);
        }
    } else {
        for (const auto& t : basis_triples)
            for (long p = -bound; p <= bound; ++p)
                for (long q = -bound; q <= bound; ++q)
                    for (long r = -bound; r <= bound; ++r) run_one(t, p, q, r);
    }
    return rep;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computations with truncated vertex operator algebras, logarithmic "
                 "modules, 3-point conformal blocks on P^1, and logarithmic intertwining "
                 "operators"};
    app.require_subcommand(1);

    std::string format = "text", out_path;
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--out", out_path, "write the report to this file");

    std::string voa_spec = "heisenberg";
    int l_max = 6;
    std::string m1_spec = "vacuum", m2_spec = "vacuum", m3_spec = "vacuum", mod_spec = "vacuum";
    int level = 4;
    long pqr_bound = 2, seed_sweep = 0, max_k = 4;

    auto add_voa_opts = [&](CLI::App* c) {
        c->add_option("--voa", voa_spec, "VOA: 'heisenberg' or a JSON file");
        c->add_option("--l-max", l_max, "weight cutoff for the built-in VOA");
    };

    CLI::App* c_voa = app.add_subcommand("check-voa", "run the VOA axiom checkers");
    add_voa_opts(c_voa);
    c_voa->add_option("--pqr-bound", pqr_bound, "Borcherds sweep bound");
    c_voa->add_option("--seed-sweep", seed_sweep, "sample this many instances instead of all");

    CLI::App* c_mod = app.add_subcommand("check-module", "validate a module and sweep the "
                                                         "module Borcherds identity");
    add_voa_opts(c_mod);
    c_mod->add_option("--module", mod_spec, "module: fock:L, logfock:L, vacuum, or a JSON file");
    c_mod->add_option("--level", level, "level cutoff for built-in modules");
    c_mod->add_option("--pqr-bound", pqr_bound, "Borcherds sweep bound");
    c_mod->add_option("--seed-sweep", seed_sweep, "sample this many instances instead of all");

    auto add_triple_opts = [&](CLI::App* c) {
        add_voa_opts(c);
        c->add_option("--m1", m1_spec, "slot-1 module");
        c->add_option("--m2", m2_spec, "slot-2 module");
        c->add_option("--m3", m3_spec, "slot-3 module");
        c->add_option("--level", level, "level budget L");
    };

    CLI::App* c_dim = app.add_subcommand("blocks-dim", "estimate dim C*(M_A, p_A)");
    add_triple_opts(c_dim);

    CLI::App* c_ext = app.add_subcommand("extract-intw", "extract intertwining operators from "
                                                         "a basis of blocks");
    add_triple_opts(c_ext);

    CLI::App* c_rt = app.add_subcommand("roundtrip", "round-trip every basis block through the "
                                                     "correspondence");
    add_triple_opts(c_rt);

    CLI::App* c_id = app.add_subcommand("identities", "symbolic coefficient identities");
    c_id->add_option("--max", max_k, "sweep bound");

    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? 2 : 0;
    }

    Output out;
    out.format = format;
    out.path = out_path;
    bool ok = true;

    try {
        if (c_voa->parsed()) {
            TruncatedVOA v = resolve_voa(voa_spec, l_max);
            out.payload["l_max"] = v.l_max();
            out.line("VOA with l_max " + std::to_string(v.l_max()));
            report(out, "borcherds", voa_borcherds_sweep(v, pqr_bound, seed_sweep), ok);
            CheckReport vir;
            for (long m = -3; m <= 3; ++m)
                for (long n = -3; n <= 3; ++n) {
                    CheckReport r = check_virasoro(v, m, n);
                    vir.checked += r.checked;
                    vir.skipped += r.skipped;
                    vir.failure_count += r.failure_count;
                    for (auto& f : r.failures)
                        if (vir.failures.size() < CheckReport::kMaxRecorded)
                            vir.failures.push_back(f);
                }
            report(out, "virasoro", vir, ok);
            report(out, "grading-translation", check_grading_translation(v), ok);
        } else if (c_mod->parsed()) {
            TruncatedVOA v = resolve_voa(voa_spec, l_max);
            LogModule m = resolve_module(mod_spec, v, level);
            out.line("module " + m.name() + " with h = " + scalar_to_string(m.h()) +
                     ", depth " + std::to_string(m.depth()) + ", cutoff " +
                     std::to_string(m.l_mod()));
            out.payload["h"] = scalar_to_string(m.h());
            out.payload["depth"] = m.depth();
            CheckReport rep;
            if (seed_sweep > 0) {
                std::mt19937_64 rng(20240811);
                for (long i = 0; i < seed_sweep; ++i) {
                    int wa = static_cast<int>(rng() % (v.l_max() + 1));
                    if (v.dim(wa) == 0) continue;
                    int ia = static_cast<int>(rng() % v.dim(wa));
                    int wb = static_cast<int>(rng() % (v.l_max() + 1));
                    if (v.dim(wb) == 0) continue;
                    int ib = static_cast<int>(rng() % v.dim(wb));
                    int lv = static_cast<int>(rng() % (m.l_mod() + 1));
                    if (m.dim(lv) == 0) continue;
                    int iu = static_cast<int>(rng() % m.dim(lv));
                    long p = static_cast<long>(rng() % (2 * pqr_bound + 1)) - pqr_bound;
                    long q = static_cast<long>(rng() % (2 * pqr_bound + 1)) - pqr_bound;
                    long r = static_cast<long>(rng() % (2 * pqr_bound + 1)) - pqr_bound;
                    if (!borcherds_checkable(v.l_max(), m.l_mod(), wa, wb, lv, p, q, r)) {
                        ++rep.skipped;
                        continue;
                    }
                    ++rep.checked;
                    GradedVector res = check_module_borcherds(
                        m, p, q, r, GradedVector::unit(wa, ia), GradedVector::unit(wb, ib),
                        GradedVector::unit(lv, iu));
                    if (!res.is_zero()) rep.fail("module Borcherds identity fails");
                }
            } else {
                rep = module_borcherds_sweep(m, pqr_bound);
            }
            report(out, "module-borcherds", rep, ok);
        } else if (c_dim->parsed()) {
            TruncatedVOA v = resolve_voa(voa_spec, l_max);
            CurrentAlgebra alg(v);
            LogModule m1 = resolve_module(m1_spec, v, level);
            LogModule m2 = resolve_module(m2_spec, v, level);
            LogModule m3 = resolve_module(m3_spec, v, level);
            BlocksReport rep = blocks_dimension(alg, m1, m2, m3, level);
            out.payload["blocks"] = blocks_report_json(rep);
            for (const auto& st : rep.per_level)
                out.line("L=" + std::to_string(st.level) + ": window " +
                         std::to_string(st.window_dim) + ", rows " +
                         std::to_string(st.relation_rows) + ", rank " + std::to_string(st.rank) +
                         ", estimate " + std::to_string(st.estimate));
            out.line("estimate " + std::to_string(rep.estimate) +
                     (rep.stabilized ? " (stabilized)" : " (NOT stabilized)"));
            out.line("stabilization is a heuristic certificate, not a proof");
        } else if (c_ext->parsed() || c_rt->parsed()) {
            TruncatedVOA v = resolve_voa(voa_spec, l_max);
            CurrentAlgebra alg(v);
            LogModule m1 = resolve_module(m1_spec, v, level);
            LogModule m2 = resolve_module(m2_spec, v, level);
            LogModule m3 = resolve_module(m3_spec, v, level);
            auto basis = block_basis(alg, m1, m2, m3, level);
            out.line("block basis size " + std::to_string(basis.size()));
            out.payload["basis_size"] = basis.size();
            json tables = json::array();
            json instances = json::array();
            for (size_t i = 0; i < basis.size(); ++i) {
                IntwTable t = intw_from_block(basis[i]);
                bool inst_ok = true;
                json inst;
                inst["id"] = i;
                inst["window"] = level;
                CheckReport checks;
                auto merge = [&](const CheckReport& r) {
                    checks.checked += r.checked;
                    checks.skipped += r.skipped;
                    checks.failure_count += r.failure_count;
                    for (const auto& f : r.failures)
                        if (checks.failures.size() < CheckReport::kMaxRecorded)
                            checks.failures.push_back(f);
                };
                merge(check_truncation(t));
                merge(check_derivative(t));
                merge(fund_relations_check(t));
                merge(intw_borcherds_sweep(alg, t, 2));
                if (c_rt->parsed()) {
                    merge(roundtrip_block(basis[i]));
                    merge(roundtrip_intw(t));
                }
                inst_ok = checks.pass();
                inst["pass"] = inst_ok;
                inst["max_residual"] = inst_ok ? "0" : "nonzero";
                inst["checked"] = checks.checked;
                if (!checks.pass()) inst["failure_samples"] = checks.failures;
                instances.push_back(std::move(inst));
                out.line("functional " + std::to_string(i) + ": " +
                         (inst_ok ? "ok" : "FAILED"));
                ok = ok && inst_ok;
                if (c_ext->parsed()) tables.push_back(save_intw(t));
            }
            out.payload["instances"] = std::move(instances);
            if (c_ext->parsed()) out.payload["tables"] = std::move(tables);
            // dimension agreement between the two routes
            BlocksReport rep = blocks_dimension(alg, m1, m2, m3, level);
            AxiomSystemStats st = intw_axiom_dimension(alg, m1, m2, m3, level);
            out.payload["blocks_estimate"] = rep.estimate;
            out.payload["axiom_system_dimension"] = st.dimension;
            out.line("blocks estimate " + std::to_string(rep.estimate) +
                     ", axiom system dimension " + std::to_string(st.dimension));
            if (rep.estimate != st.dimension) {
                out.line("dimension mismatch between the two routes");
                ok = false;
            }
        } else if (c_id->parsed()) {
            CheckReport rep;
            for (int d = 0; d <= max_k; ++d)
                for (int q = 0; q <= d; ++q)
                    for (int p = 0; p <= max_k; ++p) {
                        ++rep.checked;
                        if (!lemma38_verify(p, q, d))
                            rep.fail("power formula fails at p=" + std::to_string(p) + " q=" +
                                     std::to_string(q) + " d=" + std::to_string(d));
                    }
            report(out, "x3-power-formula", rep, ok);
            CheckReport tel;
            for (int k = 0; k <= max_k; ++k) {
                ++tel.checked;
                if (!telescoping_verify(k))
                    tel.fail("telescoping collapse fails at k=" + std::to_string(k));
            }
            report(out, "telescoping", tel, ok);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    return out.flush(ok);
}
