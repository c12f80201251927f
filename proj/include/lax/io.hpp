#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "model.hpp"

// JSON document format for algebroid definition files.  One document holds a
// base ring, an anchored bracket structure, and any number of named auxiliary
// structures:
//
//   {
//     "coordinates": ["x1", ...],
//     "relations":   ["x1^2+x2^2-1", ...],          // optional, "p = 0" form
//     "rank":        m,
//     "anchor":      [[poly, ...], ...],            // m rows, one per frame section
//     "structure":   {"C^3_{1,2}": poly, ...},      // nonzero C^c_{ab}, a < b, 1-based
//     "endomorphisms": {"J": [[poly, ...], ...]},   // m x m, optional
//     "bisections":  {"Jt": [[poly, ...], ...]},    // m x m skew, optional
//     "multivectors": {"pi": [{"indices": [1,2], "coeff": poly}, ...]},
//     "morphisms":   {"phi": {"matrix": [[poly, ...], ...], "target": "self"}},
//     "connections": {"G": [[[poly, ...], ...], ...]}  // Gamma[a][c][b], m matrices
//   }
//
// Polynomials use the shared text syntax (rationals p/q, imaginary unit i,
// identifiers, + - * ^, parentheses).  Saving renders every entry in reduced
// normal form with deterministic key order, so save(load(text)) is a fixed
// point: byte-identical output for identical mathematical content.
namespace lax {

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace io {

using json = nlohmann::ordered_json;

struct Document {
    Model model;
    std::map<std::string, std::string> morphism_targets;  // informational
};

// ---------------------------------------------------------------------------
// rendering
// ---------------------------------------------------------------------------

inline std::string poly_str(const RingCtx& R, const Poly& p) { return R.str(R.reduce(p)); }

inline json mat_json(const RingCtx& R, const Mat& M) {
    json rows = json::array();
    for (auto& r : M) {
        json row = json::array();
        for (auto& p : r) row.push_back(poly_str(R, p));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline json skew_json(const RingCtx& R, const Skew& S) {
    json terms = json::array();
    for (auto& [k, v] : S.terms) {
        Poly c = R.reduce(v);
        if (c.is_zero()) continue;
        json idx = json::array();
        for (auto b : k) idx.push_back(static_cast<int>(b) + 1);
        json t;
        t["indices"] = std::move(idx);
        t["coeff"] = R.str(c);
        terms.push_back(std::move(t));
    }
    return terms;
}

inline std::string relation_str(const RingCtx& R, const Relation& rel) {
    Poly sq;
    Mono m(R.nvars());
    m.e[rel.var] = 2;
    sq.terms.emplace(m, QI(1));
    return R.str(sq - rel.tail);
}

inline json document_json(const Document& doc) {
    const Algebroid& A = doc.model.A;
    const RingCtx& R = A.R;
    json d;
    d["coordinates"] = R.vars;
    json rels = json::array();
    for (auto& rel : R.rels) rels.push_back(relation_str(R, rel));
    d["relations"] = std::move(rels);
    d["rank"] = A.m;
    d["anchor"] = mat_json(R, A.anchor);
    json st = json::object();
    for (auto& [ab, sec] : A.C)
        for (std::size_t c = 0; c < A.m; ++c) {
            Poly v = R.reduce(sec[c]);
            if (v.is_zero()) continue;
            std::string key = "C^" + std::to_string(c + 1) + "_{" +
                              std::to_string(ab.first + 1) + "," +
                              std::to_string(ab.second + 1) + "}";
            st[key] = R.str(v);
        }
    d["structure"] = std::move(st);
    if (!doc.model.endos.empty()) {
        json e = json::object();
        for (auto& [name, M] : doc.model.endos) e[name] = mat_json(R, M);
        d["endomorphisms"] = std::move(e);
    }
    if (!doc.model.bisections.empty()) {
        json e = json::object();
        for (auto& [name, M] : doc.model.bisections) e[name] = mat_json(R, M);
        d["bisections"] = std::move(e);
    }
    if (!doc.model.tensors.empty()) {
        json e = json::object();
        for (auto& [name, S] : doc.model.tensors) e[name] = skew_json(R, S);
        d["multivectors"] = std::move(e);
    }
    if (!doc.model.morphisms.empty()) {
        json e = json::object();
        for (auto& [name, phi] : doc.model.morphisms) {
            json ent;
            ent["matrix"] = mat_json(R, phi.M);
            auto it = doc.morphism_targets.find(name);
            ent["target"] = it == doc.morphism_targets.end() ? "self" : it->second;
            e[name] = std::move(ent);
        }
        d["morphisms"] = std::move(e);
    }
    if (!doc.model.connections.empty()) {
        json e = json::object();
        for (auto& [name, G] : doc.model.connections) {
            json arr = json::array();
            for (auto& M : G) arr.push_back(mat_json(R, M));
            e[name] = std::move(arr);
        }
        d["connections"] = std::move(e);
    }
    return d;
}

inline std::string save_document(const Document& doc) { return document_json(doc).dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// parsing
// ---------------------------------------------------------------------------

namespace detail {

inline Poly parse_poly(const RingCtx& R, const std::string& text, const std::string& what) {
    try {
        return R.reduce(R.parse(text));
    } catch (const ring_error& e) {
        throw io_error(what + ": " + e.what());
    }
}

inline Mat parse_mat(const RingCtx& R, const json& rows, std::size_t nr, std::size_t nc,
                     const std::string& what) {
    if (!rows.is_array() || rows.size() != nr)
        throw io_error(what + ": expected " + std::to_string(nr) + " rows");
    Mat M;
    M.reserve(nr);
    for (auto& row : rows) {
        if (!row.is_array() || row.size() != nc)
            throw io_error(what + ": expected " + std::to_string(nc) + " columns");
        std::vector<Poly> r;
        r.reserve(nc);
        for (auto& cell : row) {
            if (!cell.is_string()) throw io_error(what + ": entries must be polynomial strings");
            r.push_back(parse_poly(R, cell.get<std::string>(), what));
        }
        M.push_back(std::move(r));
    }
    return M;
}

inline Skew parse_skew(const RingCtx& R, const json& terms, std::size_t m,
                       const std::string& what) {
    if (!terms.is_array() || terms.empty())
        throw io_error(what + ": a multivector is a nonempty list of terms");
    int deg = -1;
    Skew S(0);
    for (auto& t : terms) {
        if (!t.is_object() || !t.contains("indices") || !t.contains("coeff"))
            throw io_error(what + ": each term needs \"indices\" and \"coeff\"");
        const json& idx = t.at("indices");
        if (!idx.is_array()) throw io_error(what + ": indices must be a list");
        if (deg < 0) {
            deg = static_cast<int>(idx.size());
            S = Skew(deg);
        } else if (static_cast<int>(idx.size()) != deg)
            throw io_error(what + ": terms of mixed degree");
        Idx key;
        for (auto& v : idx) {
            long k = v.get<long>();
            if (k < 1 || k > static_cast<long>(m))
                throw io_error(what + ": index out of range");
            key.push_back(static_cast<unsigned char>(k - 1));
        }
        S.add_term(std::move(key), parse_poly(R, t.at("coeff").get<std::string>(), what));
    }
    return S;
}

// "C^c_{a,b}" with 1-based integers
inline void parse_structure_key(const std::string& key, int& a, int& b, int& c) {
    std::size_t caret = key.find("^"), brace = key.find("_{"), comma = key.find(",", brace),
                close = key.find("}", brace);
    if (key.rfind("C^", 0) != 0 || brace == std::string::npos || comma == std::string::npos ||
        close == std::string::npos || close + 1 != key.size())
        throw io_error("malformed structure key: " + key);
    try {
        c = std::stoi(key.substr(caret + 1, brace - caret - 1));
        a = std::stoi(key.substr(brace + 2, comma - brace - 2));
        b = std::stoi(key.substr(comma + 1, close - comma - 1));
    } catch (const std::exception&) {
        throw io_error("malformed structure key: " + key);
    }
}

}  // namespace detail

inline Document parse_document(const std::string& text) {
    json d;
    try {
        d = json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw io_error(std::string("invalid JSON: ") + e.what());
    }
    if (!d.is_object()) throw io_error("document must be a JSON object");
    if (!d.contains("coordinates") || !d.at("coordinates").is_array())
        throw io_error("document needs a \"coordinates\" list");
    std::vector<std::string> names;
    for (auto& v : d.at("coordinates")) {
        if (!v.is_string()) throw io_error("coordinates must be strings");
        names.push_back(v.get<std::string>());
        for (std::size_t k = 0; k + 1 < names.size(); ++k)
            if (names[k] == names.back()) throw io_error("duplicate coordinate " + names.back());
    }
    Document doc;
    Algebroid& A = doc.model.A;
    A.R = RingCtx(names);
    if (d.contains("relations"))
        for (auto& v : d.at("relations")) {
            if (!v.is_string()) throw io_error("relations must be polynomial strings");
            try {
                A.R.add_relation(A.R.parse(v.get<std::string>()));
            } catch (const ring_error& e) {
                throw io_error(std::string("relation rejected: ") + e.what());
            }  // parse and shape errors both surface here
        }
    const RingCtx& R = A.R;
    if (!d.contains("rank") || !d.at("rank").is_number_unsigned())
        throw io_error("document needs an unsigned \"rank\"");
    A.m = d.at("rank").get<std::size_t>();
    if (A.m == 0 || A.m > 64) throw io_error("rank out of range");
    if (!d.contains("anchor")) throw io_error("document needs an \"anchor\"");
    A.anchor = detail::parse_mat(R, d.at("anchor"), A.m, R.nvars(), "anchor");
    if (d.contains("structure")) {
        const json& st = d.at("structure");
        if (!st.is_object()) throw io_error("structure must be an object");
        for (auto& [key, val] : st.items()) {
            int a, b, c;
            detail::parse_structure_key(key, a, b, c);
            if (a < 1 || b < 1 || c < 1 || a > static_cast<int>(A.m) ||
                b > static_cast<int>(A.m) || c > static_cast<int>(A.m) || a >= b)
                throw io_error("structure key out of range (need a < b): " + key);
            if (!val.is_string()) throw io_error("structure values must be polynomial strings");
            A.set_structure(a - 1, b - 1, c - 1,
                            detail::parse_poly(R, val.get<std::string>(), "structure " + key));
        }
    }
    if (d.contains("endomorphisms"))
        for (auto& [name, val] : d.at("endomorphisms").items())
            doc.model.endos[name] = detail::parse_mat(R, val, A.m, A.m, "endomorphism " + name);
    if (d.contains("bisections"))
        for (auto& [name, val] : d.at("bisections").items())
            doc.model.bisections[name] = detail::parse_mat(R, val, A.m, A.m, "bisection " + name);
    if (d.contains("multivectors"))
        for (auto& [name, val] : d.at("multivectors").items())
            doc.model.tensors[name] = detail::parse_skew(R, val, A.m, "multivector " + name);
    if (d.contains("morphisms"))
        for (auto& [name, val] : d.at("morphisms").items()) {
            if (!val.is_object() || !val.contains("matrix"))
                throw io_error("morphism " + name + " needs a \"matrix\"");
            const json& rows = val.at("matrix");
            if (!rows.is_array() || rows.empty())
                throw io_error("morphism " + name + ": empty matrix");
            std::size_t nr = rows.size();
            Morphism phi;
            phi.M = detail::parse_mat(R, rows, nr, A.m, "morphism " + name);
            doc.model.morphisms[name] = std::move(phi);
            doc.morphism_targets[name] =
                val.contains("target") ? val.at("target").get<std::string>() : "self";
        }
    if (d.contains("connections"))
        for (auto& [name, val] : d.at("connections").items()) {
            if (!val.is_array() || val.size() != A.m)
                throw io_error("connection " + name + ": expected one matrix per frame section");
            std::vector<Mat> G;
            for (auto& Mj : val)
                G.push_back(detail::parse_mat(R, Mj, A.m, A.m, "connection " + name));
            doc.model.connections[name] = std::move(G);
        }
    return doc;
}

inline Document load_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_document(ss.str());
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot write " + path);
    out << text;
}

}  // namespace io
}  // namespace lax
