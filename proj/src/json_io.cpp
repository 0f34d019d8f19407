#include "latseq/json_io.hpp"

#include <fstream>

#include "latseq/errors.hpp"

namespace latseq {

namespace {

const Json& expect(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        fail(ErrorKind::BadInput, std::string("missing key \"") + key + "\"");
    return j.at(key);
}

} // namespace

Json lattice_to_json(const Lattice& l) {
    Json j;
    j["elements"] = l.elements();
    Json pairs = Json::array();
    for (int a = 0; a < l.size(); ++a)
        for (int b = 0; b < l.size(); ++b)
            if (l.leq(a, b)) pairs.push_back(Json::array({l.label(a), l.label(b)}));
    j["leq"] = std::move(pairs);
    return j;
}

Lattice lattice_from_json(const Json& j) {
    const Json& elems = expect(j, "elements");
    const Json& leq = expect(j, "leq");
    if (!elems.is_array() || !leq.is_array())
        fail(ErrorKind::BadInput, "\"elements\" and \"leq\" must be arrays");
    std::vector<std::string> elements;
    for (const Json& e : elems) {
        if (!e.is_string()) fail(ErrorKind::BadInput, "element identifiers must be strings");
        elements.push_back(e.get<std::string>());
    }
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const Json& p : leq) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string())
            fail(ErrorKind::BadInput, "\"leq\" entries must be pairs of element identifiers");
        pairs.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
    }
    return Lattice::build(std::move(elements), pairs);
}

std::shared_ptr<const Lattice> lattice_from_spec(const Json& j) {
    if (j.is_string()) return std::make_shared<const Lattice>(catalog(j.get<std::string>()));
    return std::make_shared<const Lattice>(lattice_from_json(j));
}

Json upset_to_json(const UpwardClosedSet& u) {
    Json j;
    j["m"] = u.dim();
    j["generators"] = u.generators();
    return j;
}

UpwardClosedSet upset_from_json(const Json& j) {
    const Json& m = expect(j, "m");
    const Json& gens = expect(j, "generators");
    if (!m.is_number_integer() || !gens.is_array())
        fail(ErrorKind::BadInput, "expected {\"m\": int, \"generators\": [[int,...],...]}");
    std::vector<Vec> vecs;
    for (const Json& g : gens) {
        if (!g.is_array()) fail(ErrorKind::BadInput, "generators must be arrays of integers");
        Vec v;
        for (const Json& x : g) {
            if (!x.is_number_integer() || x.get<long long>() < 0)
                fail(ErrorKind::BadInput, "generator entries must be nonnegative integers");
            v.push_back(x.get<int>());
        }
        vecs.push_back(std::move(v));
    }
    return UpwardClosedSet::from_generators(m.get<int>(), std::move(vecs));
}

Json presentation_to_json(const SequencePresentation& p) {
    Json j;
    j["lattice"] = lattice_to_json(p.lattice());
    Json levels = Json::object();
    for (int x = 0; x < p.lattice().size(); ++x)
        levels[p.lattice().label(x)] = upset_to_json(p.level(x));
    j["levels"] = std::move(levels);
    return j;
}

SequencePresentation presentation_from_json(const Json& j) {
    auto l = lattice_from_spec(expect(j, "lattice"));
    const Json& levels = expect(j, "levels");
    if (!levels.is_object()) fail(ErrorKind::BadInput, "\"levels\" must map elements to upsets");
    std::vector<UpwardClosedSet> parsed(l->size(), UpwardClosedSet::empty(l->size()));
    std::vector<char> seen(l->size(), 0);
    for (auto it = levels.begin(); it != levels.end(); ++it) {
        int x = l->require_index(it.key());
        parsed[x] = upset_from_json(it.value());
        seen[x] = 1;
    }
    for (int x = 0; x < l->size(); ++x)
        if (!seen[x])
            fail(ErrorKind::InvalidPresentation,
                 "no level given for element \"" + l->label(x) + "\"");
    return SequencePresentation(std::move(l), std::move(parsed));
}

Json table_to_json(const TruncatedTable& t) {
    Json j;
    j["lattice"] = lattice_to_json(t.lattice());
    j["T"] = t.bound();
    Json values = Json::array();
    for (const auto& [v, val] : t.values()) {
        Json entry;
        entry["vector"] = v;
        entry["value"] = t.lattice().label(val);
        values.push_back(std::move(entry));
    }
    j["values"] = std::move(values);
    return j;
}

TruncatedTable table_from_json(const Json& j) {
    auto l = lattice_from_spec(expect(j, "lattice"));
    const Json& bound = expect(j, "T");
    const Json& values = expect(j, "values");
    if (!bound.is_number_integer() || !values.is_array())
        fail(ErrorKind::BadInput, "expected {\"T\": int, \"values\": [...]}");
    std::map<Vec, int> parsed;
    for (const Json& entry : values) {
        const Json& vec = expect(entry, "vector");
        const Json& val = expect(entry, "value");
        if (!vec.is_array() || !val.is_string())
            fail(ErrorKind::BadInput, "table entries are {\"vector\": [...], \"value\": \"id\"}");
        Vec v;
        for (const Json& x : vec) {
            if (!x.is_number_integer() || x.get<long long>() < 0)
                fail(ErrorKind::BadInput, "vector entries must be nonnegative integers");
            v.push_back(x.get<int>());
        }
        if (!parsed.emplace(std::move(v), l->require_index(val.get<std::string>())).second)
            fail(ErrorKind::InconsistentTable, "duplicate table vector");
    }
    return TruncatedTable(std::move(l), bound.get<int>(), std::move(parsed));
}

bool is_table_json(const Json& j) {
    if (!j.is_object()) fail(ErrorKind::BadInput, "sequence files are JSON objects");
    if (j.contains("values") || j.contains("T")) return true;
    if (j.contains("levels")) return false;
    fail(ErrorKind::BadInput, "sequence files carry either \"levels\" or \"T\"/\"values\"");
}

Json report_to_json(const AdmissibilityReport& r) {
    Json j;
    j["admissible"] = r.admissible();
    Json axioms = Json::array();
    for (const AxiomCheck& a : r.axioms) {
        Json e;
        e["axiom"] = a.axiom;
        e["passed"] = a.passed;
        e["violations"] = a.violations;
        if (!a.passed) e["witness"] = a.witness;
        axioms.push_back(std::move(e));
    }
    j["axioms"] = std::move(axioms);
    return j;
}

Json classification_to_json(const Classification& c) {
    Json j;
    j["verdict"] = c.verdict == Classification::Verdict::Finite ? "finite" : "infinite";
    j["method"] = c.method;
    if (c.cap) j["cap"] = *c.cap;
    if (c.verdict == Classification::Verdict::Finite) {
        j["count"] = c.sequences.size();
        Json seqs = Json::array();
        for (const SequencePresentation& s : c.sequences) seqs.push_back(presentation_to_json(s));
        j["sequences"] = std::move(seqs);
    } else {
        j["pair"] = Json::array(
            {c.lattice->label(c.pair->delta), c.lattice->label(c.pair->epsilon)});
    }
    return j;
}

Json poset_report_to_json(const PosetReport& r) {
    Json j;
    j["count"] = r.count;
    Json rows = Json::array();
    for (const auto& row : r.leq) {
        Json cells = Json::array();
        for (uint8_t v : row) cells.push_back((bool)v);
        rows.push_back(std::move(cells));
    }
    j["leq"] = std::move(rows);
    j["longest_chain"] = r.longest_chain;
    j["max_antichain"] = r.max_antichain;
    j["embedding_injective"] = r.embedding_injective;
    j["embedding_order_reversing"] = r.embedding_order_reversing;
    return j;
}

Json central_series_to_json(const Lattice& l, const CentralSeries& s) {
    Json j;
    Json terms = Json::array();
    for (int t : s.terms) terms.push_back(l.label(t));
    j["terms"] = std::move(terms);
    j["nilpotent"] = s.nilpotent;
    if (s.nilpotent) j["class"] = s.nilpotency_class;
    return j;
}

Json error_to_json(const Error& e) {
    Json j;
    j["error"] = to_string(e.kind());
    j["message"] = e.what();
    j["exit_code"] = exit_code(e.kind());
    return j;
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::BadInput, "cannot open \"" + path + "\"");
    try {
        Json j;
        in >> j;
        return j;
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::BadInput, "cannot parse \"" + path + "\": " + e.what());
    }
}

void save_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) fail(ErrorKind::BadInput, "cannot write \"" + path + "\"");
    out << j.dump(2) << "\n";
}

} // namespace latseq
