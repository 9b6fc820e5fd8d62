#include "vablocks/io.hpp"

#include <fstream>

namespace vablocks {

namespace {

Scalar parse_scalar(const json& j, const char* where) {
    if (!j.is_string()) throw ParseError(std::string(where) + ": scalar must be a \"p/q\" string");
    try {
        return scalar_from_string(j.get<std::string>());
    } catch (const std::exception& e) {
        throw ParseError(std::string(where) + ": " + e.what());
    }
}

GradedVector parse_combination(const json& j, const TruncatedVOA* voa, const LogModule* mod,
                               const char* where) {
    GradedVector out;
    if (!j.is_array()) throw ParseError(std::string(where) + ": result must be an array");
    for (const auto& e : j) {
        std::string name = e.at("basis").get<std::string>();
        Scalar c = parse_scalar(e.at("coeff"), where);
        if (voa) {
            auto [w, i] = voa->find_basis(name);
            out.add(w, i, c);
        } else {
            bool found = false;
            for (int lv = 0; lv <= mod->l_mod() && !found; ++lv)
                for (int i = 0; i < mod->dim(lv) && !found; ++i)
                    if (mod->level_name(lv, i) == name) {
                        out.add(lv, i, c);
                        found = true;
                    }
            if (!found)
                throw UnknownBasisError(std::string(where) + ": unknown module basis '" + name +
                                        "'");
        }
    }
    return out;
}

json dump_combination_voa(const TruncatedVOA& v, const GradedVector& g) {
    json arr = json::array();
    for (const auto& [k, c] : g.entries())
        arr.push_back({{"basis", v.basis_name(k.first, k.second)},
                       {"coeff", scalar_to_string(c)}});
    return arr;
}

} // namespace

TruncatedVOA load_voa(const json& j) {
    try {
        VOAData d;
        d.l_max = j.at("l_max").get<int>();
        d.weights = j.at("weights").get<std::vector<std::vector<std::string>>>();
        d.vacuum = j.at("vacuum").get<std::string>();
        d.omega = j.at("omega").get<std::string>();
        d.central_charge = parse_scalar(j.at("central_charge"), "central_charge");
        // a temporary VOA without products resolves names
        VOAData names_only = d;
        TruncatedVOA resolver(std::move(names_only));
        for (const auto& p : j.at("products")) {
            auto [wa, ia] = resolver.find_basis(p.at("a").get<std::string>());
            auto [wb, ib] = resolver.find_basis(p.at("b").get<std::string>());
            long n = p.at("n").get<long>();
            GradedVector res = parse_combination(p.at("result"), &resolver, nullptr, "products");
            d.products.push_back({wa, ia, n, wb, ib, std::move(res)});
        }
        return TruncatedVOA(std::move(d));
    } catch (const json::exception& e) {
        throw ParseError(std::string("VOA file: ") + e.what());
    }
}

json save_voa(const TruncatedVOA& v) {
    json j;
    j["l_max"] = v.l_max();
    j["weights"] = v.weights();
    j["vacuum"] = v.basis_name(v.vacuum().first, v.vacuum().second);
    j["omega"] = v.basis_name(v.omega().first, v.omega().second);
    j["central_charge"] = scalar_to_string(v.central_charge());
    json prods = json::array();
    for (const auto& [key, res] : v.products()) {
        auto [wa, ia, n, wb, ib] = key;
        prods.push_back({{"a", v.basis_name(wa, ia)},
                         {"n", n},
                         {"b", v.basis_name(wb, ib)},
                         {"result", dump_combination_voa(v, res)}});
    }
    j["products"] = std::move(prods);
    return j;
}

LogModule load_module(const json& j, const TruncatedVOA& voa, const std::string& name) {
    try {
        ModuleData d;
        d.h = parse_scalar(j.at("h"), "h");
        d.depth = j.at("depth").get<int>();
        d.l_mod = j.at("l_mod").get<int>();
        d.levels = j.at("levels").get<std::vector<std::vector<std::string>>>();
        for (const auto& lv : j.at("l0")) {
            std::vector<std::vector<Scalar>> m;
            for (const auto& row : lv) {
                std::vector<Scalar> r;
                for (const auto& e : row) r.push_back(parse_scalar(e, "l0"));
                m.push_back(std::move(r));
            }
            d.l0.push_back(std::move(m));
        }
        // resolve module basis names
        std::map<std::string, std::pair<int, int>> by_name;
        for (int lv = 0; lv < static_cast<int>(d.levels.size()); ++lv)
            for (int i = 0; i < static_cast<int>(d.levels[lv].size()); ++i)
                by_name[d.levels[lv][i]] = {lv, i};
        for (const auto& a : j.at("actions")) {
            auto [wa, ia] = voa.find_basis(a.at("a").get<std::string>());
            long n = a.at("n").get<long>();
            auto uit = by_name.find(a.at("u").get<std::string>());
            if (uit == by_name.end())
                throw UnknownBasisError("actions: unknown module basis '" +
                                        a.at("u").get<std::string>() + "'");
            GradedVector res;
            for (const auto& e : a.at("result")) {
                auto rit = by_name.find(e.at("basis").get<std::string>());
                if (rit == by_name.end())
                    throw UnknownBasisError("actions: unknown module basis '" +
                                            e.at("basis").get<std::string>() + "'");
                res.add(rit->second.first, rit->second.second,
                        parse_scalar(e.at("coeff"), "actions"));
            }
            d.actions.push_back({wa, ia, n, uit->second.first, uit->second.second,
                                 std::move(res)});
        }
        return LogModule(voa, std::move(d), name);
    } catch (const json::exception& e) {
        throw ParseError(std::string("module file: ") + e.what());
    }
}

json save_module(const LogModule& m) {
    json j;
    j["h"] = scalar_to_string(m.h());
    j["depth"] = m.depth();
    j["l_mod"] = m.l_mod();
    json levels = json::array();
    for (int lv = 0; lv <= m.l_mod(); ++lv) {
        json names = json::array();
        for (int i = 0; i < m.dim(lv); ++i) names.push_back(m.level_name(lv, i));
        levels.push_back(std::move(names));
    }
    j["levels"] = std::move(levels);
    json l0 = json::array();
    for (int lv = 0; lv <= m.l_mod(); ++lv) {
        json mat = json::array();
        for (int i = 0; i < m.dim(lv); ++i) {
            json row = json::array();
            for (int k = 0; k < m.dim(lv); ++k) row.push_back(scalar_to_string(m.l0()[lv][i][k]));
            mat.push_back(std::move(row));
        }
        l0.push_back(std::move(mat));
    }
    j["l0"] = std::move(l0);
    json actions = json::array();
    for (const auto& a : m.actions()) {
        json res = json::array();
        for (const auto& [k, c] : a.result.entries())
            res.push_back({{"basis", m.level_name(k.first, k.second)},
                           {"coeff", scalar_to_string(c)}});
        actions.push_back({{"a", m.voa().basis_name(a.wa, a.ia)},
                           {"n", a.m},
                           {"u", m.level_name(a.level, a.iu)},
                           {"result", std::move(res)}});
    }
    j["actions"] = std::move(actions);
    return j;
}

json save_intw(const IntwTable& t) {
    const TriWindow& win = t.win();
    json j;
    j["d"] = t.log_bound();
    j["budget"] = win.budget();
    json layers = json::array();
    for (int n = 0; n <= t.log_bound(); ++n) {
        // group nonzero entries by (alpha_offset, level1, level2)
        std::map<std::tuple<int, int, int>, json> blocks;
        for (int idx = 0; idx < win.dim(); ++idx) {
            if (is_zero(t.at(n, idx))) continue;
            const auto& c = win.cells()[idx];
            int off = c.l1 + c.l2 - c.l3 - 1;
            auto key = std::make_tuple(off, c.l1, c.l2);
            if (blocks.find(key) == blocks.end()) {
                int d2 = win.mod(1).dim(c.l2), d3 = win.mod(2).dim(c.l3);
                json mat = json::array();
                for (int r = 0; r < win.mod(0).dim(c.l1) * d2; ++r) {
                    json row = json::array();
                    for (int s = 0; s < d3; ++s) row.push_back("0");
                    mat.push_back(std::move(row));
                }
                blocks[key] = std::move(mat);
            }
            int d2 = win.mod(1).dim(c.l2);
            (void)d2;
            blocks[key][c.i1 * win.mod(1).dim(c.l2) + c.i2][c.i3] =
                scalar_to_string(t.at(n, idx));
        }
        for (auto& [key, mat] : blocks) {
            layers.push_back({{"n", n},
                              {"alpha_offset", std::get<0>(key)},
                              {"level1", std::get<1>(key)},
                              {"level2", std::get<2>(key)},
                              {"matrix", std::move(mat)}});
        }
    }
    j["layers"] = std::move(layers);
    return j;
}

IntwTable load_intw(const json& j, std::shared_ptr<const TriWindow> win) {
    try {
        IntwTable t(win, j.at("d").get<int>());
        if (j.at("budget").get<int>() != win->budget())
            throw WindowTooSmallError("intertwiner table budget differs from the window");
        for (const auto& layer : j.at("layers")) {
            int n = layer.at("n").get<int>();
            int off = layer.at("alpha_offset").get<int>();
            int l1 = layer.at("level1").get<int>();
            int l2 = layer.at("level2").get<int>();
            int l3 = l1 + l2 - 1 - off;
            const auto& mat = layer.at("matrix");
            int d2 = win->mod(1).dim(l2);
            for (int r = 0; r < static_cast<int>(mat.size()); ++r)
                for (int s = 0; s < static_cast<int>(mat[r].size()); ++s) {
                    Scalar v = parse_scalar(mat[r][s], "matrix");
                    if (is_zero(v)) continue;
                    t.set(n, l1, r / d2, l2, r % d2, l3, s, v);
                }
        }
        return t;
    } catch (const json::exception& e) {
        throw ParseError(std::string("intertwiner file: ") + e.what());
    }
}

json blocks_report_json(const BlocksReport& rep) {
    json j;
    j["estimate"] = rep.estimate;
    j["stabilized"] = rep.stabilized;
    j["note"] = "stabilization is a heuristic certificate, not a proof";
    json levels = json::array();
    for (const auto& st : rep.per_level)
        levels.push_back({{"level", st.level},
                          {"window_dim", st.window_dim},
                          {"forms_considered", st.forms_considered},
                          {"expansion_triples", st.expansion_triples},
                          {"relation_rows", st.relation_rows},
                          {"rank", st.rank},
                          {"estimate", st.estimate}});
    j["per_level"] = std::move(levels);
    return j;
}

json check_report_json(const std::string& name, const CheckReport& rep) {
    json j;
    j["check"] = name;
    j["checked"] = rep.checked;
    j["skipped"] = rep.skipped;
    j["failures"] = rep.failure_count;
    j["pass"] = rep.pass();
    if (!rep.failures.empty()) j["failure_samples"] = rep.failures;
    return j;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw ParseError(path + ": cannot open for writing");
    out << j.dump(2) << "\n";
}

} // namespace vablocks
