#include "iforms/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "iforms/prng.hpp"

namespace iforms {

Mat parse_matrix(const Json& rows, const FieldPtr& field) {
    if (!rows.is_array() || rows.empty())
        throw structural_error("matrix must be a non-empty array of rows");
    const long r = static_cast<long>(rows.size());
    const long c = static_cast<long>(rows.front().size());
    Mat m = zero_matrix(r, c);
    for (long i = 0; i < r; ++i) {
        const Json& row = rows[static_cast<size_t>(i)];
        if (!row.is_array() || static_cast<long>(row.size()) != c)
            throw structural_error("matrix rows have inconsistent lengths");
        for (long j = 0; j < c; ++j) {
            const Json& cell = row[static_cast<size_t>(j)];
            if (cell.is_number_integer()) {
                m(i, j) = Scalar(static_cast<long long>(cell.get<long long>()));
            } else if (cell.is_string()) {
                m(i, j) = Scalar::parse(cell.get<std::string>(), field);
            } else {
                throw structural_error("matrix entries must be integers or scalar strings");
            }
        }
    }
    return m;
}

namespace {

std::vector<Mat> parse_matrices(const Json& arr, const FieldPtr& field) {
    if (!arr.is_array()) throw structural_error("expected an array of matrices");
    std::vector<Mat> out;
    for (const Json& m : arr) out.push_back(parse_matrix(m, field));
    return out;
}

Json matrix_to_json(const Mat& m) {
    Json rows = Json::array();
    for (long i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (long j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
        rows.push_back(row);
    }
    return rows;
}

Json dims_to_json(const std::map<int, std::map<int, long>>& dims) {
    Json out = Json::object();
    for (const auto& [w, row] : dims) {
        Json jrow = Json::object();
        for (const auto& [k, d] : row) jrow[std::to_string(k)] = d;
        out[std::to_string(w)] = jrow;
    }
    return out;
}

FiniteGroupAction build_group(const Scenario& s) {
    return FiniteGroupAction::close(s.finite().generators);
}

std::pair<std::vector<int>, std::vector<Mat>> resolve_morita(const Scenario& s,
                                                             const FiniteGroupAction& g) {
    const MoritaSpec& ms = *s.morita;
    std::vector<int> gen_indices;
    for (const Mat& m : ms.subgroup_generators) {
        const int idx = g.find(m);
        if (idx < 0) throw structural_error("subgroup generator is not a group element");
        gen_indices.push_back(idx);
    }
    return extend_subgroup_action(g, gen_indices, ms.slice_action);
}

} // namespace

Scenario parse_scenario(const Json& config) {
    if (!config.is_object()) throw structural_error("config must be a JSON object");
    Scenario s;
    Json echo = Json::object();

    if (config.contains("field")) {
        const Json& f = config["field"];
        const std::string type = f.value("type", "rational");
        if (type == "extension") {
            if (!f.contains("min_poly"))
                throw structural_error("extension field requires min_poly coefficients");
            std::vector<Rational> coeffs;
            for (const Json& c : f["min_poly"]) {
                if (c.is_number_integer())
                    coeffs.emplace_back(c.get<long long>());
                else
                    coeffs.emplace_back(c.get<std::string>());
            }
            s.field = std::make_shared<ExtensionField>(std::move(coeffs));
            Json mp = Json::array();
            for (const Rational& c : s.field->modulus()) mp.push_back(c.str());
            echo["field"] = Json{{"type", "extension"}, {"min_poly", mp}};
        } else if (type == "rational") {
            echo["field"] = Json{{"type", "rational"}};
        } else {
            throw structural_error("unknown field type '" + type + "'");
        }
    } else {
        echo["field"] = Json{{"type", "rational"}};
    }

    if (!config.contains("action")) throw structural_error("config requires an action");
    const Json& a = config["action"];
    const std::string type = a.value("type", "");
    if (type == "finite") {
        FiniteSpec fs;
        fs.generators = parse_matrices(a.at("generators"), s.field);
        if (fs.generators.empty()) throw structural_error("finite action needs generators");
        Json gens = Json::array();
        for (const Mat& m : fs.generators) gens.push_back(matrix_to_json(m));
        echo["action"] = Json{{"type", "finite"}, {"generators", gens}};
        s.action = std::move(fs);
    } else if (type == "circle") {
        CircleSpec cs;
        for (const Json& w : a.at("weights")) cs.weights.weights.push_back(w.get<long>());
        cs.weights.fixed_dims = a.value("fixed_dims", 0);
        cs.weights.validate();
        Json ws = Json::array();
        for (long w : cs.weights.weights) ws.push_back(w);
        echo["action"] =
            Json{{"type", "circle"}, {"weights", ws}, {"fixed_dims", cs.weights.fixed_dims}};
        s.action = std::move(cs);
    } else {
        throw structural_error("action type must be 'finite' or 'circle'");
    }

    s.cutoff = config.value("cutoff", 4);
    if (s.cutoff < 1) throw structural_error("cutoff must be >= 1");
    echo["cutoff"] = s.cutoff;

    if (config.contains("subgroup")) {
        if (s.is_circle()) throw structural_error("subgroup requires a finite action");
        MoritaSpec ms;
        ms.subgroup_generators = parse_matrices(config["subgroup"].at("generators"), s.field);
        ms.slice_action = parse_matrices(config["subgroup"].at("slice_action"), s.field);
        if (ms.subgroup_generators.size() != ms.slice_action.size())
            throw structural_error("subgroup generators and slice_action differ in count");
        Json sg = Json::array(), sa = Json::array();
        for (const Mat& m : ms.subgroup_generators) sg.push_back(matrix_to_json(m));
        for (const Mat& m : ms.slice_action) sa.push_back(matrix_to_json(m));
        echo["subgroup"] = Json{{"generators", sg}, {"slice_action", sa}};
        s.morita = std::move(ms);
    }

    if (config.contains("charts")) {
        ChartSpec cs;
        const Json& ch = config["charts"];
        for (const Json& sp : ch.at("spaces")) {
            ChartSpec::Space space;
            space.dim = sp.at("dim").get<int>();
            for (const Json& comp : sp.at("components")) {
                if (comp.is_array() && comp.empty()) {
                    space.components.push_back(zero_matrix(0, space.dim));
                } else {
                    space.components.push_back(parse_matrix(comp, s.field));
                }
            }
            cs.spaces.push_back(std::move(space));
        }
        for (const Json& tr : ch.at("transfers")) {
            ChartSpec::Transfer t;
            t.src = tr.at("src").get<int>();
            t.dst = tr.at("dst").get<int>();
            t.embedding = parse_matrix(tr.at("matrix"), s.field);
            cs.transfers.push_back(std::move(t));
        }
        if (ch.contains("independence_pairs"))
            for (const Json& p : ch["independence_pairs"])
                cs.independence_pairs.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
        if (ch.contains("cocycle_triples"))
            for (const Json& t : ch["cocycle_triples"])
                cs.cocycle_triples.push_back(
                    {t.at(0).get<int>(), t.at(1).get<int>(), t.at(2).get<int>()});
        echo["charts"] = ch;
        s.charts = std::move(cs);
    }

    s.seed = config.value("seed", 1u);
    s.samples = config.value("samples", 100);
    if (s.samples < 0) throw structural_error("samples must be >= 0");
    echo["seed"] = s.seed;
    echo["samples"] = s.samples;
    s.echo = std::move(echo);
    return s;
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw structural_error("cannot open config file '" + path + "'");
    Json config;
    try {
        in >> config;
    } catch (const std::exception& e) {
        throw structural_error("config is not valid JSON: " + std::string(e.what()));
    }
    return parse_scenario(config);
}

Report run_loopspace(const Scenario& s) {
    Report report;
    Json rows = Json::array();
    if (s.is_circle()) {
        const CircleWeights& cw = s.circle().weights;
        const SubspaceArrangement arr = circle_arrangement(cw);
        rows.push_back(Json{{"stratum", "identity"},
                            {"fixed_dim", cw.action_dim()},
                            {"basis", matrix_to_json(arr.components()[1])}});
        rows.push_back(Json{{"stratum", "generic"},
                            {"fixed_dim", 1 + cw.fixed_dims},
                            {"basis", matrix_to_json(arr.components()[0])}});
    } else {
        const FiniteGroupAction g = build_group(s);
        const LoopSpaceModel loop(g);
        for (int i = 0; i < g.size(); ++i) {
            rows.push_back(Json{{"element", i},
                                {"matrix", matrix_to_json(g.element(i))},
                                {"fixed_dim", loop.fixed_dim(i)},
                                {"basis", matrix_to_json(loop.basis(i))}});
        }
    }
    report.tables["loopspace"] = rows;
    return report;
}

Report run_dims(const Scenario& s) {
    Report report;
    if (s.is_circle()) {
        const CircleModel model(s.circle().weights, s.cutoff);
        report.tables["relative_dims"] = dims_to_json(model.relative_dims());
        report.tables["basic_dims"] = dims_to_json(model.basic_dims());
    } else {
        const FiniteGroupAction g = build_group(s);
        const LoopSpaceModel loop(g);
        const BasicComplex bc(group_component_system(g, loop), s.cutoff);
        report.tables["basic_dims"] = dims_to_json(bc.basic_dims());
    }
    return report;
}

Report run_cohomology(const Scenario& s) {
    Report report;
    if (s.is_circle()) {
        const CircleModel model(s.circle().weights, s.cutoff);
        report = model.cohomology_report();
    } else {
        const FiniteGroupAction g = build_group(s);
        report = resolution_check(g, s.cutoff);
    }
    return report;
}

Report run_verify(const Scenario& s, bool inject_fault) {
    Report report;
    if (s.is_circle()) {
        CircleModel model(s.circle().weights, s.cutoff);
        if (inject_fault) model.inject_fault();
        report = model.cohomology_report();
    } else {
        const FiniteGroupAction g = build_group(s);
        report = resolution_check(g, s.cutoff, inject_fault);
        if (s.morita) {
            const auto [subgroup, rho] = resolve_morita(s, g);
            Report mr = morita_check(g, subgroup, rho, s.cutoff);
            report.merge(mr, "morita/");
        }
    }
    if (s.charts) {
        Report cr = run_chart_check(s);
        report.merge(cr, "charts/");
    }
    return report;
}

Report run_homotopy_check(const Scenario& s, int samples, std::uint64_t seed) {
    Report report;
    Prng prng(seed);
    long failures = 0;
    long done = 0;
    if (s.is_circle()) {
        const CircleModel model(s.circle().weights, s.cutoff);
        const int n = s.circle().weights.ambient_dim();
        std::vector<SlotKey> keys;
        for (int w = 0; w <= s.cutoff; ++w)
            for (int k = 0; k <= n; ++k)
                if (model.basic_dim(w, k) > 0) keys.push_back({w, k});
        for (int t = 0; t < samples && !keys.empty(); ++t) {
            const SlotKey key = keys[static_cast<size_t>(prng.range(0, static_cast<long>(keys.size()) - 1))];
            const Vec q = prng.row_space_element(model.basic(key.w, key.k));
            bool ok = true;
            if (key.k == 0) {
                const Vec lhs = model.induced_homotopy(key.w, 1) * (model.induced_d(key.w, 0) * q);
                const Vec rhs = q - model.induced_fiber_eval(key.w) * q;
                ok = lhs == rhs;
            } else {
                Vec sum = model.induced_d(key.w, key.k - 1) * (model.induced_homotopy(key.w, key.k) * q);
                if (key.k + 1 <= n)
                    sum += model.induced_homotopy(key.w, key.k + 1) * (model.induced_d(key.w, key.k) * q);
                ok = sum == q;
            }
            if (!ok) ++failures;
            ++done;
        }
    } else {
        const FiniteGroupAction g = build_group(s);
        const LoopSpaceModel loop(g);
        const BasicComplex bc(group_component_system(g, loop), s.cutoff);
        std::vector<SlotKey> keys;
        for (int w = 0; w <= s.cutoff; ++w)
            for (int k = 0; k <= bc.kmax(); ++k)
                if (bc.basic_dim(w, k) > 0) keys.push_back({w, k});
        for (int t = 0; t < samples && !keys.empty(); ++t) {
            const SlotKey key = keys[static_cast<size_t>(prng.range(0, static_cast<long>(keys.size()) - 1))];
            const Vec coords = prng.row_space_element(bc.basic(key.w, key.k));
            const FamilySlot& fs = bc.family_slot(key.w, key.k);
            // Form-level identity, componentwise: an independent route from
            // the matrix pipeline.
            bool ok = true;
            for (int c = 0; c < bc.system().component_count() && ok; ++c) {
                const SlotBasis& sb = fs.per_comp[static_cast<size_t>(c)];
                if (sb.dim() == 0) continue;
                const Form omega = sb.form(coords.segment(fs.offsets[static_cast<size_t>(c)], sb.dim()));
                if (key.k == 0) {
                    const Form df = ext_d(omega);
                    Form recovered = df.is_zero() ? Form(omega.ambient_dim(), 0) : poincare_homotopy(df);
                    Form expected = omega;
                    expected -= Form::from_poly(
                        Poly::constant(omega.ambient_dim(), omega.component({}).value_at_origin()));
                    ok = recovered == expected;
                } else {
                    Form sum = ext_d(poincare_homotopy(omega));
                    const Form df = ext_d(omega);
                    if (!df.is_zero()) sum += poincare_homotopy(df);
                    ok = sum == omega;
                }
            }
            if (!ok) ++failures;
            ++done;
        }
    }
    report.tables["samples"] = done;
    report.check("homotopy_identity_failures", "samples=" + std::to_string(done), 0, failures);
    return report;
}

Report run_morita(const Scenario& s) {
    if (s.is_circle()) throw structural_error("morita requires a finite action");
    if (!s.morita) throw structural_error("morita requires a subgroup section in the config");
    const FiniteGroupAction g = build_group(s);
    const auto [subgroup, rho] = resolve_morita(s, g);
    return morita_check(g, subgroup, rho, s.cutoff);
}

Report run_chart_check(const Scenario& s) {
    if (!s.charts) throw structural_error("chart-check requires a charts section in the config");
    const ChartSpec& cs = *s.charts;
    Report report;

    std::vector<QuotientComplex> complexes;
    for (const auto& space : cs.spaces) {
        complexes.push_back(gg_complex(SubspaceArrangement(space.dim, space.components), s.cutoff));
    }
    std::vector<ChartTransfer> transfers;
    for (size_t t = 0; t < cs.transfers.size(); ++t) {
        const auto& tr = cs.transfers[t];
        if (tr.src < 0 || tr.src >= static_cast<int>(complexes.size()) || tr.dst < 0 ||
            tr.dst >= static_cast<int>(complexes.size()))
            throw structural_error("transfer chart index out of range");
        ChartTransfer transfer = chart_transfer(complexes[static_cast<size_t>(tr.src)],
                                                complexes[static_cast<size_t>(tr.dst)], tr.embedding);
        report.check_true("transfer_is_isomorphism", "transfer=" + std::to_string(t),
                          transfer_is_isomorphism(transfer, complexes[static_cast<size_t>(tr.src)],
                                                  complexes[static_cast<size_t>(tr.dst)]));
        report.check_true("transfer_commutes_with_d", "transfer=" + std::to_string(t),
                          transfer_commutes_with_d(transfer, complexes[static_cast<size_t>(tr.src)],
                                                   complexes[static_cast<size_t>(tr.dst)]));
        transfers.push_back(std::move(transfer));
    }
    for (size_t p = 0; p < cs.independence_pairs.size(); ++p) {
        const auto& [a, b] = cs.independence_pairs[p];
        if (a < 0 || b < 0 || a >= static_cast<int>(transfers.size()) ||
            b >= static_cast<int>(transfers.size()))
            throw structural_error("independence pair index out of range");
        const auto& ta = cs.transfers[static_cast<size_t>(a)];
        const auto& tb = cs.transfers[static_cast<size_t>(b)];
        if (ta.src != tb.src || ta.dst != tb.dst)
            throw structural_error("independence pair must connect the same charts");
        if (!same_structure_map(complexes[static_cast<size_t>(ta.dst)], ta.embedding, tb.embedding))
            throw structural_error("independence pair embeddings induce different structure maps");
        report.check_true("embedding_independence", "pair=" + std::to_string(p),
                          transfers_equal(transfers[static_cast<size_t>(a)],
                                          transfers[static_cast<size_t>(b)]));
    }
    for (size_t t = 0; t < cs.cocycle_triples.size(); ++t) {
        const auto& tri = cs.cocycle_triples[t];
        for (int idx : tri)
            if (idx < 0 || idx >= static_cast<int>(transfers.size()))
                throw structural_error("cocycle triple index out of range");
        report.check_true("cocycle", "triple=" + std::to_string(t),
                          cocycle_check(transfers[static_cast<size_t>(tri[0])],
                                        transfers[static_cast<size_t>(tri[1])],
                                        transfers[static_cast<size_t>(tri[2])]));
    }
    Json dims = Json::array();
    for (const auto& qc : complexes) dims.push_back(dims_to_json(qc.dims()));
    report.tables["chart_dims"] = dims;
    return report;
}

namespace {

void render_table_json(std::ostream& os, const std::string& name, const Json& value) {
    if (value.is_object()) {
        // {w -> [h0, h1, ...]} tables: one line per weight.
        bool rows_of_arrays = !value.empty();
        for (const auto& [w, row] : value.items())
            if (!row.is_array()) rows_of_arrays = false;
        if (rows_of_arrays) {
            os << '[' << name << "]\n";
            size_t width = 0;
            for (const auto& [w, row] : value.items()) width = std::max(width, row.size());
            os << "w";
            for (size_t k = 0; k < width; ++k) os << "\tk=" << k;
            os << '\n';
            for (const auto& [w, row] : value.items()) {
                os << w;
                for (const auto& v : row) os << '\t' << v.dump();
                os << '\n';
            }
            return;
        }
        // {w -> {k -> dim}} style tables become aligned grids.
        bool grid = !value.empty();
        for (const auto& [w, row] : value.items())
            if (!row.is_object()) grid = false;
        if (grid) {
            os << '[' << name << "]\n";
            std::vector<std::string> ks;
            for (const auto& [w, row] : value.items())
                for (const auto& [k, d] : row.items())
                    if (std::find(ks.begin(), ks.end(), k) == ks.end()) ks.push_back(k);
            std::sort(ks.begin(), ks.end(),
                      [](const std::string& a, const std::string& b) { return std::stol(a) < std::stol(b); });
            os << "w\\k";
            for (const auto& k : ks) os << '\t' << k;
            os << '\n';
            for (const auto& [w, row] : value.items()) {
                os << w;
                for (const auto& k : ks) {
                    os << '\t';
                    if (row.contains(k)) os << row[k].dump();
                }
                os << '\n';
            }
            return;
        }
    }
    os << '[' << name << "]\n" << value.dump(2) << '\n';
}

} // namespace

std::string render_report(const Scenario& s, const Report& report, const std::string& format) {
    std::ostringstream os;
    if (format == "json") {
        Json out = Json::object();
        out["scenario"] = s.echo;
        out["tables"] = report.tables;
        out["assertions"] = report.assertions_json();
        out["version"] = kVersion;
        os << out.dump(2) << '\n';
    } else if (format == "csv") {
        for (const auto& [name, table] : report.tables.items()) {
            bool grid = table.is_object() && !table.empty();
            if (grid)
                for (const auto& [w, row] : table.items())
                    if (!row.is_object()) grid = false;
            if (grid) {
                os << "table," << name << "\nw,k,dim\n";
                for (const auto& [w, row] : table.items())
                    for (const auto& [k, d] : row.items())
                        os << w << ',' << k << ',' << d.dump() << '\n';
                continue;
            }
            // arrays of flat records (e.g. the loopspace listing): emit the
            // scalar fields of the first record as columns
            if (table.is_array() && !table.empty() && table.front().is_object()) {
                std::vector<std::string> cols;
                for (const auto& [key, value] : table.front().items())
                    if (value.is_primitive()) cols.push_back(key);
                if (cols.empty()) continue;
                os << "table," << name << '\n';
                for (size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
                os << '\n';
                for (const auto& row : table) {
                    for (size_t i = 0; i < cols.size(); ++i) {
                        if (i) os << ',';
                        if (row.contains(cols[i])) {
                            const auto& v = row[cols[i]];
                            os << (v.is_string() ? v.get<std::string>() : v.dump());
                        }
                    }
                    os << '\n';
                }
            }
        }
        if (!report.assertions.empty()) {
            os << "assertion,slot,expected,actual,pass\n";
            for (const auto& a : report.assertions)
                os << a.name << ',' << a.slot << ',' << a.expected << ',' << a.actual << ','
                   << (a.pass ? "true" : "false") << '\n';
        }
    } else if (format == "table") {
        for (const auto& [name, table] : report.tables.items()) render_table_json(os, name, table);
        if (!report.assertions.empty()) {
            os << "[assertions]\n";
            for (const auto& a : report.assertions)
                os << (a.pass ? "PASS" : "FAIL") << ' ' << a.name << ' ' << a.slot
                   << " expected=" << a.expected << " actual=" << a.actual << '\n';
        }
    } else {
        throw structural_error("unknown format '" + format + "'");
    }
    return os.str();
}

} // namespace iforms
