#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fklab/error.hpp"
#include "fklab/experiment.hpp"
#include "fklab/identities.hpp"
#include "fklab/kernels.hpp"
#include "fklab/literals.hpp"
#include "fklab/modarith.hpp"
#include "fklab/modulus_registry.hpp"
#include "fklab/patterns.hpp"
#include "fklab/pgl2.hpp"

using namespace fklab;
using json = nlohmann::ordered_json;

namespace {

std::vector<FieldElement> parse_elements(const FieldDescriptor& d, const std::string& list) {
    if (trim(list) == "all" && d.is_finite()) return enumerate_finite(d);
    std::vector<FieldElement> out;
    for (const auto& s : split(list, ',')) out.push_back(parse_element(d, trim(s)));
    return out;
}

/// "x1:y1;x2:y2;..."
std::vector<Point2> parse_points(const FieldDescriptor& d, const std::string& list) {
    std::vector<Point2> out;
    for (const auto& s : split(list, ';')) {
        const auto xy = split(s, ':');
        if (xy.size() != 2) throw Error(ErrorCode::ParseError, "point needs 'x:y': " + s);
        out.emplace_back(parse_element(d, trim(xy[0])).code(), parse_element(d, trim(xy[1])).code());
    }
    return out;
}

json hits_json(const PatternReport& r) {
    json j{{"search_space", r.search_space}, {"exhaustive", r.exhaustive}, {"exploratory", r.exploratory},
           {"hit_count", r.hits.size()}};
    j["hits"] = json::array();
    for (const auto& h : r.hits) {
        json w = json::array();
        for (const auto& x : h) w.push_back(x.to_string());
        j["hits"].push_back(w);
    }
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fklab: character sums, Folner sequences and finite identities over countable fields"};
    app.require_subcommand(1);

    int jobs = 0;
    std::uint64_t cap = 0;
    std::string moduli;
    app.add_option("--jobs", jobs, "OpenMP threads (0 = runtime default)");
    app.add_option("--cap", cap, "enumeration cap for brute-force searches");
    app.add_option("--moduli", moduli, "file of extra moduli, lines 'p n : c_0 ... c_n'");

    // run / list
    auto* run = app.add_subcommand("run", "run a scenario from a config file and/or by name");
    std::string config_path, scenario, out_dir;
    std::uint64_t seed = 0;
    std::vector<std::string> sets;
    run->add_option("--config", config_path, "config file");
    run->add_option("--scenario", scenario, "scenario name (overrides the config)");
    run->add_option("--out", out_dir, "output directory");
    run->add_option("--seed", seed, "seed (overrides the config)");
    run->add_option("--set", sets, "extra key=value entries");
    auto* list = app.add_subcommand("list", "list built-in scenarios");

    // identity
    auto* identity = app.add_subcommand("identity", "polynomial and character identities");
    identity->require_subcommand(1);
    unsigned n = 3;
    std::uint32_t p = 0;
    std::int64_t m = 0;
    auto* power_build = identity->add_subcommand("power-build", "build and verify the power identity for (n, p)");
    power_build->add_option("--n", n)->required();
    power_build->add_option("--p", p, "characteristic, 0 for Q");
    auto* independence = identity->add_subcommand("independence", "linear independence of p_j^m");
    independence->add_option("--n", n)->required();
    independence->add_option("--p", p);
    independence->add_option("--m", m)->required();
    std::string field_lit = "F_5", elem_lit;
    auto* mixing3 = identity->add_subcommand("mixing3", "failure-of-3-mixing value at a");
    mixing3->add_option("--field", field_lit);
    mixing3->add_option("--a", elem_lit)->required();
    auto* poscorr = identity->add_subcommand("poscorr", "positive-correlation sweep (scenario poscorr)");
    std::string qs = "5,7,9", Ns = "2,3,4";
    std::int64_t trials = 100;
    poscorr->add_option("--q", qs);
    poscorr->add_option("--N", Ns);
    poscorr->add_option("--trials", trials);
    poscorr->add_option("--seed", seed);

    // pattern
    auto* pattern = app.add_subcommand("pattern", "pattern searches in finite fields");
    pattern->require_subcommand(1);
    std::string t_lit = "1", z_lit = "1", points, poly, T_lit, E_lit;
    unsigned size = 4;
    auto* hyp3 = pattern->add_subcommand("hyperbola3", "triples on three hyperbolas");
    hyp3->add_option("--field", field_lit);
    auto* hypd = pattern->add_subcommand("hyperbola-diffset", "sets whose difference set lies on H_t");
    hypd->add_option("--field", field_lit);
    hypd->add_option("--t", t_lit);
    hypd->add_option("--size", size);
    auto* prod = pattern->add_subcommand("prod", "coverage of Prod(E - E)");
    prod->add_option("--field", field_lit);
    prod->add_option("--points", points, "x1:y1;x2:y2;...")->required();
    auto* spacetime = pattern->add_subcommand("spacetime", "pairs with (x1-y1)^2 - (x2-y2)^2 = z");
    spacetime->add_option("--field", field_lit);
    spacetime->add_option("--z", z_lit);
    spacetime->add_option("--points", points)->required();
    auto* laurent = pattern->add_subcommand("laurent-fs", "first a in T with p(a) in E - E");
    laurent->add_option("--field", field_lit);
    laurent->add_option("--poly", poly, "terms c@e separated by ';', e.g. '1@2;1@-1'")->required();
    laurent->add_option("--T", T_lit)->required();
    laurent->add_option("--E", E_lit)->required();

    // pgl2
    auto* pgl2 = app.add_subcommand("pgl2", "Q(A) sets in PGL_2");
    pgl2->require_subcommand(1);
    std::string A_lit, b_lit = "1", gen = "plus", support = "symmetric";
    auto* ratio = pgl2->add_subcommand("ratio", "Folner ratio for A built from F");
    ratio->add_option("--field", field_lit);
    ratio->add_option("--F", A_lit)->required();
    ratio->add_option("--b", b_lit);
    ratio->add_option("--gen", gen)->check(CLI::IsMember({"plus", "minus"}));
    ratio->add_option("--support", support)->check(CLI::IsMember({"symmetric", "given"}));
    auto* qset = pgl2->add_subcommand("qset", "size and members of Q(A)");
    qset->add_option("--field", field_lit);
    qset->add_option("--A", A_lit)->required();
    auto* section = pgl2->add_subcommand("section-check", "inversion-section counts");
    section->add_option("--field", field_lit);
    section->add_option("--A", A_lit)->required();
    section->add_option("--b", b_lit);

    auto* fields = app.add_subcommand("fields", "print the modulus used for F_{p^n}");
    unsigned fn = 1;
    fields->add_option("--p", p)->required();
    fields->add_option("--n", fn)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (jobs > 0) kernels::set_threads(jobs);
        if (cap > 0) set_enumeration_cap(cap);
        if (!moduli.empty()) ModulusRegistry::global().load_file(moduli);

        if (*list) {
            for (const auto& [name, desc] : list_scenarios()) std::cout << name << "\t" << desc << "\n";
            return 0;
        }
        if (*run) {
            ExperimentConfig c = config_path.empty() ? ExperimentConfig() : ExperimentConfig::load(config_path);
            if (!scenario.empty()) c.set("scenario", scenario);
            if (!out_dir.empty()) c.set("out", out_dir);
            if (run->count("--seed")) c.set("seed", std::to_string(seed));
            for (const auto& s : sets) {
                const auto eq = s.find('=');
                if (eq == std::string::npos) throw Error(ErrorCode::ParseError, "--set needs key=value");
                c.set(trim(s.substr(0, eq)), trim(s.substr(eq + 1)));
            }
            if (c.scenario().empty()) throw Error(ErrorCode::ParseError, "no scenario given");
            if (c.has("cap")) set_enumeration_cap(c.get_u64("cap", 0));
            const RunOutcome o = run_experiment(c, jobs);
            for (const auto& [name, ok] : o.result.checks) std::cout << (ok ? "ok   " : "FAIL ") << name << "\n";
            for (const auto& path : o.written) std::cout << "wrote " << path << "\n";
            return o.exit_code;
        }
        if (*identity) {
            if (*power_build) {
                const auto id = build_power_identity(n, p);
                json j{{"n", n}, {"p", p}, {"N", id.N()}, {"identity", id.to_string()}};
                std::cout << j.dump(2) << "\n";
            } else if (*independence) {
                const auto id = build_power_identity(n, p);
                const auto r = check_linear_independence(id, m);
                json w = json::array();
                for (const auto& c : r.witness) w.push_back(c.get_str());
                std::cout << json{{"n", n}, {"p", p}, {"m", m}, {"independent", r.independent}, {"rank", r.rank}, {"witness", w}}.dump(2)
                          << "\n";
            } else if (*mixing3) {
                const auto d = parse_field(field_lit);
                const auto v = triple_mixing_check(parse_element(d, elem_lit));
                std::cout << json{{"field", d.to_string()}, {"a", elem_lit}, {"value", v.to_string()}}.dump(2) << "\n";
            } else if (*poscorr) {
                ExperimentConfig c;
                c.set("scenario", "poscorr");
                c.set("q", qs);
                c.set("N", Ns);
                c.set("trials", std::to_string(trials));
                c.set("seed", std::to_string(seed ? seed : 1));
                const RunOutcome o = run_experiment(c, jobs, false);
                std::cout << o.result.artifacts.front().content;
                return o.exit_code;
            }
            return 0;
        }
        if (*pattern) {
            const auto d = parse_field(field_lit);
            json j;
            if (*hyp3) {
                j = hits_json(hyperbola_triple_search(d));
            } else if (*hypd) {
                j = hits_json(hyperbola_diffset_search(d, parse_element(d, t_lit), size));
            } else if (*prod) {
                const auto cov = prod_coverage(d.ff(), parse_points(d, points));
                j = {{"covered", cov.covered.size()}, {"fraction", cov.fraction}};
            } else if (*spacetime) {
                j = hits_json(spacetime_search(d, parse_element(d, z_lit), parse_points(d, points)));
            } else if (*laurent) {
                LaurentPoly P;
                for (const auto& term : split(poly, ';')) {
                    const auto at = term.find('@');
                    if (at == std::string::npos) throw Error(ErrorCode::ParseError, "term needs c@e: " + term);
                    P.terms.emplace_back(static_cast<int>(parse_int(trim(term.substr(at + 1)))), parse_element(d, trim(term.substr(0, at))));
                }
                j = hits_json(laurent_fs_search(parse_elements(d, T_lit), parse_elements(d, E_lit), P));
                j["poly"] = P.to_string();
            }
            std::cout << j.dump(2) << "\n";
            return 0;
        }
        if (*pgl2) {
            const auto d = parse_field(field_lit);
            json j;
            if (*ratio) {
                const auto fr = pgl2_folner_ratio(parse_elements(d, A_lit), parse_element(d, b_lit),
                                                  gen == "plus" ? Generator::Plus : Generator::Minus, 40,
                                                  support == "given" ? RatioSupport::AsGiven : RatioSupport::Symmetric);
                j = {{"ratio", fr.ratio.get_str()}};
                if (fr.true_ratio) j["true_ratio"] = fr.true_ratio->get_str();
            } else if (*qset) {
                const auto A = parse_elements(d, A_lit);
                const auto Q = q_set(A);
                std::vector<Pgl2Element> sorted(Q.begin(), Q.end());
                std::sort(sorted.begin(), sorted.end());
                j = {{"size", Q.size()}, {"expected", q_set_size(A.size()).get_str()}};
                for (const auto& g : sorted) j["elements"].push_back(g.to_string());
            } else if (*section) {
                const auto r = inversion_section_check(parse_elements(d, A_lit), parse_element(d, b_lit));
                j = {{"lhs", r.lhs}, {"rhs", r.rhs}, {"equal", r.equal}};
            }
            std::cout << j.dump(2) << "\n";
            return 0;
        }
        if (*fields) {
            std::cout << ModulusRegistry::format_line(ModulusRegistry::global().modulus(p, fn)) << "\n";
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == ErrorCode::ParseError ? 2 : 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
