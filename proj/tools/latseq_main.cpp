// Command line front end: validate / analyze / enumerate / oracle / check /
// compare / family / lcs over lattice and sequence files or built-in names.
// Reports go to stdout (human tables by default, --json for machines);
// errors are always a JSON object on stderr with a documented exit code.

#include <CLI11.hpp>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "latseq/enumerate.hpp"
#include "latseq/errors.hpp"
#include "latseq/json_io.hpp"

namespace {

using namespace latseq;

struct UsageError {
    std::string message;
};

// Every subcommand names its lattice either as the first positional path or
// via --builtin; the sequence files (when the verb takes them) follow.
struct LatticeArg {
    std::string builtin;
    std::vector<std::string> paths;

    std::shared_ptr<const Lattice> resolve(size_t file_count, std::vector<std::string>& files) {
        size_t expected = file_count + (builtin.empty() ? 1 : 0);
        if (paths.size() != expected)
            throw UsageError{"expected " + std::to_string(expected) +
                             " path argument(s), got " + std::to_string(paths.size())};
        std::shared_ptr<const Lattice> l;
        size_t next = 0;
        if (builtin.empty())
            l = std::make_shared<const Lattice>(lattice_from_json(load_json_file(paths[next++])));
        else
            l = std::make_shared<const Lattice>(catalog(builtin));
        files.assign(paths.begin() + next, paths.end());
        return l;
    }
};

void add_lattice_arg(CLI::App* cmd, LatticeArg& arg, const char* positional_help) {
    cmd->add_option("paths", arg.paths, positional_help);
    cmd->add_option("--builtin", arg.builtin,
                    "built-in lattice name (B2, M2, M3.., C2.., N5, ONE)");
}

std::string element_list(const Lattice& l, const std::vector<int>& xs) {
    std::string out = "{";
    for (size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ", ";
        out += l.label(xs[i]);
    }
    return out + "}";
}

SequencePresentation load_sequence(const std::string& path, const Lattice& context) {
    Json j = load_json_file(path);
    SequencePresentation p =
        is_table_json(j) ? from_truncated_table(table_from_json(j)) : presentation_from_json(j);
    if (!p.lattice().same_content(context))
        fail(ErrorKind::LatticeMismatch,
             "sequence in \"" + path + "\" lives on a different lattice");
    return p;
}

void emit(bool as_json, const Json& j, const std::string& human) {
    if (as_json)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << human;
}

int run_validate(const std::shared_ptr<const Lattice>& l, bool as_json) {
    LatticeAxiomReport axioms = verify_lattice_axioms(*l);
    auto witness = modularity_counterexample(*l);
    Json j;
    j["elements"] = l->size();
    j["lattice_axioms"] = axioms.ok() ? "pass" : "fail";
    if (!axioms.ok()) j["failures"] = axioms.failures;
    j["modular"] = !witness.has_value();
    if (witness)
        j["modularity_witness"] = Json::array(
            {l->label(witness->x), l->label(witness->y), l->label(witness->z)});
    std::ostringstream os;
    os << "elements:       " << l->size() << "\n";
    os << "lattice axioms: " << (axioms.ok() ? "pass" : "fail") << "\n";
    for (const std::string& f : axioms.failures) os << "  " << f << "\n";
    os << "modular:        " << (witness ? "no" : "yes") << "\n";
    if (witness)
        os << "  witness: (" << l->label(witness->x) << ", " << l->label(witness->y) << ", "
           << l->label(witness->z) << ")\n";
    emit(as_json, j, os.str());
    return 0;
}

int run_analyze(const std::shared_ptr<const Lattice>& l, bool as_json) {
    Json j;
    std::ostringstream os;
    j["elements"] = l->size();
    os << "elements: " << l->size() << "\n";
    if (l->size() >= 2) {
        std::vector<int> at = atoms(*l), co = coatoms(*l);
        Json ja = Json::array(), jc = Json::array();
        for (int x : at) ja.push_back(l->label(x));
        for (int x : co) jc.push_back(l->label(x));
        j["atoms"] = std::move(ja);
        j["coatoms"] = std::move(jc);
        os << "atoms:    " << element_list(*l, at) << "\n";
        os << "coatoms:  " << element_list(*l, co) << "\n";
    }
    auto witness = modularity_counterexample(*l);
    j["modular"] = !witness.has_value();
    os << "modular:  " << (witness ? "no" : "yes") << "\n";

    Json jpairs = Json::array();
    std::optional<SplittingPair> strong;
    if (l->size() >= 2) {
        for (const SplittingPair& p : splitting_pairs(*l)) {
            jpairs.push_back(Json{{"delta", l->label(p.delta)},
                                  {"epsilon", l->label(p.epsilon)},
                                  {"strong", p.strong}});
            if (p.strong && !strong) strong = p;
        }
    }
    j["splitting_pairs"] = std::move(jpairs);
    os << "splitting pairs:\n";
    if (l->size() < 2 || splitting_pairs(*l).empty()) os << "  none\n";
    for (const SplittingPair& p : l->size() < 2 ? std::vector<SplittingPair>{}
                                                : splitting_pairs(*l))
        os << "  (" << l->label(p.delta) << ", " << l->label(p.epsilon) << ")"
           << (p.strong ? " strong" : "") << "\n";

    if (strong) {
        j["splits_strongly"] =
            Json::array({l->label(strong->delta), l->label(strong->epsilon)});
        bool covered = true;
        for (int x = 0; x < l->size(); ++x)
            covered = covered && (l->leq(x, strong->delta) || l->leq(strong->epsilon, x));
        j["interval_union"] = Json{{"delta", l->label(strong->delta)},
                                   {"epsilon", l->label(strong->epsilon)},
                                   {"verified", covered}};
        j["enumeration"] = "infinite";
        os << "splits strongly: (" << l->label(strong->delta) << ", "
           << l->label(strong->epsilon) << "); enumeration infinite\n";
        os << "union of intervals: [0, " << l->label(strong->delta) << "] u ["
           << l->label(strong->epsilon) << ", 1]" << (covered ? " (verified)" : " (FAILED)")
           << "\n";
    } else {
        j["splits_strongly"] = nullptr;
        os << "splits strongly: no\n";
        try {
            Decomposition d = decompose(*l);
            j["decomposition"] =
                Json{{"core_size", d.core->size()}, {"b2_power", d.b2_power}};
            os << "decomposition: core of size " << d.core->size() << ", " << d.b2_power
               << " two-element factors\n";
        } catch (const Error& e) {
            j["decomposition"] = Json{{"refused", to_string(e.kind())}};
            os << "decomposition refused: " << to_string(e.kind()) << "\n";
        }
    }
    emit(as_json, j, os.str());
    return 0;
}

void print_sequence_table(std::ostream& os, const std::vector<SequencePresentation>& seqs) {
    os << "  #  cap  vanishing  nilpotent\n";
    for (size_t i = 0; i < seqs.size(); ++i) {
        auto vanish = vanishing_arity(seqs[i]);
        CentralSeries series = lower_central_series(seqs[i]);
        os << std::setw(3) << i << "  " << std::setw(3) << seqs[i].cap_degree() << "  "
           << std::setw(9) << (vanish ? std::to_string(*vanish) : std::string("-")) << "  "
           << (series.nilpotent ? "class " + std::to_string(series.nilpotency_class)
                                : std::string("no"))
           << "\n";
    }
}

int run_enumerate(const std::shared_ptr<const Lattice>& l, bool as_json, bool use_oracle,
                  std::optional<int> cap, std::optional<long long> budget) {
    if (cap && !use_oracle) throw UsageError{"--cap only applies together with --oracle"};
    SearchOptions opts = SearchOptions::defaults();
    if (budget) opts.node_budget = *budget;

    Classification c;
    if (!use_oracle) {
        c = classify(l, opts);
    } else {
        c.lattice = l;
        c.method = "oracle";
        auto strong = l->size() >= 2 ? splits_strongly(*l) : std::nullopt;
        if (strong) {
            c.verdict = Classification::Verdict::Infinite;
            c.pair = strong;
        } else {
            // a finite verdict must come with the complete list, so the cap
            // may only be raised above the derived one
            int complete_cap = derived_oracle_cap(*l);
            if (cap && *cap < complete_cap)
                fail(ErrorKind::BadInput,
                     "cap " + std::to_string(*cap) + " is below the derived complete cap " +
                         std::to_string(complete_cap) + "; use the oracle verb for cap-relative lists");
            int used_cap = cap ? *cap : complete_cap;
            c.verdict = Classification::Verdict::Finite;
            c.cap = used_cap;
            c.sequences = brute_force_oracle(l, used_cap, opts);
            std::sort(c.sequences.begin(), c.sequences.end(),
                      [](const SequencePresentation& a, const SequencePresentation& b) {
                          return a.less_than(b);
                      });
        }
    }

    std::ostringstream os;
    if (c.verdict == Classification::Verdict::Finite) {
        os << "finite, count " << c.sequences.size() << " (method: " << c.method << ")\n";
        print_sequence_table(os, c.sequences);
    } else {
        os << "infinite; strong splitting pair (" << l->label(c.pair->delta) << ", "
           << l->label(c.pair->epsilon) << ")\n";
    }
    emit(as_json, classification_to_json(c), os.str());
    return 0;
}

int run_oracle(const std::shared_ptr<const Lattice>& l, bool as_json, int cap,
               std::optional<long long> budget) {
    SearchOptions opts = SearchOptions::defaults();
    if (budget) opts.node_budget = *budget;
    std::vector<SequencePresentation> seqs = brute_force_oracle(l, cap, opts);
    std::sort(seqs.begin(), seqs.end(),
              [](const SequencePresentation& a, const SequencePresentation& b) {
                  return a.less_than(b);
              });
    Json j;
    j["cap"] = cap;
    j["count"] = seqs.size();
    Json arr = Json::array();
    for (const SequencePresentation& s : seqs) arr.push_back(presentation_to_json(s));
    j["sequences"] = std::move(arr);
    std::ostringstream os;
    os << "sequences with presentation degree <= " << cap << ": " << seqs.size() << "\n";
    print_sequence_table(os, seqs);
    emit(as_json, j, os.str());
    return 0;
}

int run_check(const std::shared_ptr<const Lattice>& l, const std::string& seq_path,
              bool as_json) {
    Json j = load_json_file(seq_path);
    AdmissibilityReport report;
    if (is_table_json(j)) {
        TruncatedTable t = table_from_json(j);
        if (!t.lattice().same_content(*l))
            fail(ErrorKind::LatticeMismatch, "table lives on a different lattice");
        report = check_admissible(t);
    } else {
        SequencePresentation p = presentation_from_json(j);
        if (!p.lattice().same_content(*l))
            fail(ErrorKind::LatticeMismatch, "sequence lives on a different lattice");
        report = check_admissible(p);
    }
    std::ostringstream os;
    for (const AxiomCheck& a : report.axioms) {
        os << a.axiom << ": " << (a.passed ? "pass" : "FAIL") << "\n";
        if (!a.passed) os << "  " << a.witness << " (" << a.violations << " violations)\n";
    }
    os << (report.admissible() ? "admissible\n" : "not admissible\n");
    emit(as_json, report_to_json(report), os.str());
    return report.admissible() ? 0 : 1;
}

int run_compare(const std::shared_ptr<const Lattice>& l, const std::string& path1,
                const std::string& path2, bool as_json) {
    SequencePresentation p = load_sequence(path1, *l);
    SequencePresentation q = load_sequence(path2, *l);
    bool pq = leq_sequences(p, q), qp = leq_sequences(q, p);
    Json j;
    j["first_below_second"] = pq;
    j["second_below_first"] = qp;
    j["equal"] = pq && qp;
    std::ostringstream os;
    os << "seq1 below seq2: " << (pq ? "yes" : "no") << "\n";
    os << "seq2 below seq1: " << (qp ? "yes" : "no") << "\n";
    emit(as_json, j, os.str());
    return 0;
}

int run_family(const std::shared_ptr<const Lattice>& l, int k, const std::string& out_dir,
               bool as_json) {
    if (l->size() < 2) fail(ErrorKind::TrivialLattice, "no splitting pair on one element");
    auto strong = splits_strongly(*l);
    if (!strong) fail(ErrorKind::NotStrong, "lattice has no strong splitting pair");
    std::vector<SequencePresentation> fam = infinite_family(l, *strong, k);
    Json members = Json::array();
    std::ostringstream os;
    os << "strong pair (" << l->label(strong->delta) << ", " << l->label(strong->epsilon)
       << "), members 0.." << k << "\n";
    bool all_admissible = true, chain = true;
    for (size_t i = 0; i < fam.size(); ++i) {
        std::ostringstream name;
        name << out_dir << "/h_family_" << std::setw(2) << std::setfill('0') << i << ".json";
        save_json_file(name.str(), presentation_to_json(fam[i]));
        bool admissible = check_admissible(fam[i], true).admissible();
        all_admissible = all_admissible && admissible;
        if (i > 0) chain = chain && leq_sequences(fam[i - 1], fam[i]) && !(fam[i - 1] == fam[i]);
        members.push_back(Json{{"file", name.str()},
                               {"cap", fam[i].cap_degree()},
                               {"admissible", admissible}});
        os << "  " << name.str() << " cap " << fam[i].cap_degree()
           << (admissible ? "" : " NOT ADMISSIBLE") << "\n";
    }
    Json j;
    j["pair"] = Json::array({l->label(strong->delta), l->label(strong->epsilon)});
    j["members"] = std::move(members);
    j["all_admissible"] = all_admissible;
    j["strictly_ascending"] = chain;
    os << "all admissible: " << (all_admissible ? "yes" : "NO") << "\n";
    os << "strictly ascending chain: " << (chain ? "yes" : "NO") << "\n";
    emit(as_json, j, os.str());
    return all_admissible && chain ? 0 : 1;
}

int run_lcs(const std::shared_ptr<const Lattice>& l, const std::string& seq_path,
            bool as_json) {
    SequencePresentation p = load_sequence(seq_path, *l);
    CentralSeries s = lower_central_series(p);
    std::ostringstream os;
    os << "series:";
    for (int t : s.terms) os << " " << l->label(t);
    os << "\n";
    if (s.nilpotent)
        os << "nilpotent of class " << s.nilpotency_class << "\n";
    else
        os << "not nilpotent (stabilizes at " << l->label(s.terms.back()) << ")\n";
    emit(as_json, central_series_to_json(*l, s), os.str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite lattice analysis and admissible operation sequence enumeration"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "machine readable output");

    LatticeArg lat;
    std::optional<int> cap;
    std::optional<long long> budget;
    int oracle_cap = 0;
    bool use_oracle = false;
    int family_k = 0;
    std::string out_dir = ".";
    std::string seq1, seq2;

    auto* validate = app.add_subcommand("validate", "lattice axioms and modularity");
    add_lattice_arg(validate, lat, "lattice JSON file");

    auto* analyze = app.add_subcommand("analyze", "atoms, splitting pairs, decomposition");
    add_lattice_arg(analyze, lat, "lattice JSON file");

    auto* enumerate =
        app.add_subcommand("enumerate", "classify and list the admissible sequences");
    add_lattice_arg(enumerate, lat, "lattice JSON file");
    enumerate->add_flag("--oracle", use_oracle, "enumerate by direct search instead");
    enumerate->add_option("--cap", cap, "presentation degree cap for --oracle");
    enumerate->add_option("--budget", budget, "search node budget (default LATSEQ_BUDGET)");

    auto* oracle = app.add_subcommand("oracle", "sequences up to a presentation degree cap");
    add_lattice_arg(oracle, lat, "lattice JSON file");
    oracle->add_option("--cap", oracle_cap, "presentation degree cap")->required();
    oracle->add_option("--budget", budget, "search node budget (default LATSEQ_BUDGET)");

    auto* check = app.add_subcommand("check", "admissibility axioms of a sequence file");
    add_lattice_arg(check, lat, "lattice JSON file (unless --builtin), then the sequence file");

    auto* compare = app.add_subcommand("compare", "pointwise order between two sequences");
    add_lattice_arg(compare, lat, "lattice JSON file (unless --builtin), then two sequence files");

    auto* family = app.add_subcommand("family", "ascending family of a strong splitting pair");
    add_lattice_arg(family, lat, "lattice JSON file");
    family->add_option("--k", family_k, "largest member index")->required();
    family->add_option("--out-dir", out_dir, "directory for the sequence files");

    auto* lcs = app.add_subcommand("lcs", "lower central series of a sequence");
    add_lattice_arg(lcs, lat, "lattice JSON file (unless --builtin), then the sequence file");

    for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        std::vector<std::string> files;
        if (validate->parsed()) return run_validate(lat.resolve(0, files), as_json);
        if (analyze->parsed()) return run_analyze(lat.resolve(0, files), as_json);
        if (enumerate->parsed())
            return run_enumerate(lat.resolve(0, files), as_json, use_oracle, cap, budget);
        if (oracle->parsed()) return run_oracle(lat.resolve(0, files), as_json, oracle_cap, budget);
        if (check->parsed()) {
            auto l = lat.resolve(1, files);
            return run_check(l, files[0], as_json);
        }
        if (compare->parsed()) {
            auto l = lat.resolve(2, files);
            return run_compare(l, files[0], files[1], as_json);
        }
        if (family->parsed()) return run_family(lat.resolve(0, files), family_k, out_dir, as_json);
        if (lcs->parsed()) {
            auto l = lat.resolve(1, files);
            return run_lcs(l, files[0], as_json);
        }
    } catch (const UsageError& e) {
        std::cerr << e.message << "\nRun with --help for more information.\n";
        return 2;
    } catch (const latseq::Error& e) {
        std::cerr << latseq::error_to_json(e).dump(2) << "\n";
        return latseq::exit_code(e.kind());
    } catch (const std::exception& e) {
        latseq::Json j;
        j["error"] = "Internal";
        j["message"] = e.what();
        std::cerr << j.dump(2) << "\n";
        return 10;
    }
    return 2;
}
