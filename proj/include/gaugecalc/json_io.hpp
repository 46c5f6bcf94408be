#pragma once

#include "gaugecalc/labeling.hpp"
#include "gaugecalc/semilattice.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace gaugecalc {

/// All documents are emitted with insertion-ordered keys and rationals as
/// canonical "p" / "p/q" strings, so identical inputs serialize to identical
/// bytes.
using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

inline Json to_json(const Rational& r) { return to_string(r); }

inline Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(static_cast<long long>(j.get<std::int64_t>()));
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw std::invalid_argument("expected a rational as integer or \"p/q\" string");
}

inline Json to_json(const RatVec& v) {
    Json arr = Json::array();
    for (const auto& x : v) arr.push_back(to_json(x));
    return arr;
}

inline RatVec vec_from_json(const Json& j) {
    if (!j.is_array()) throw std::invalid_argument("expected a vector as a JSON array");
    RatVec v;
    for (const auto& x : j) v.push_back(rational_from_json(x));
    return v;
}

inline Json to_json(const VPolytope& p) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["type"] = "V";
    j["dim"] = p.dim;
    Json verts = Json::array();
    for (const auto& v : p.vertices) verts.push_back(to_json(v));
    j["vertices"] = std::move(verts);
    return j;
}

inline VPolytope figure_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("vertices") || !j.contains("dim"))
        throw std::invalid_argument("figure document needs \"dim\" and \"vertices\"");
    if (j.contains("type") && j.at("type").get<std::string>() != "V")
        throw std::invalid_argument("only V-representation figures are accepted");
    VPolytope p;
    p.dim = j.at("dim").get<std::size_t>();
    for (const auto& v : j.at("vertices")) p.vertices.push_back(vec_from_json(v));
    validate_figure(p);
    return p;
}

inline Json to_json(const ConicMeasure& mu) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["dim"] = mu.dim;
    Json atoms = Json::array();
    for (const auto& a : mu.atoms) {
        Json atom;
        atom["u"] = to_json(a.direction);
        atom["c"] = to_json(a.weight);
        atoms.push_back(std::move(atom));
    }
    j["atoms"] = std::move(atoms);
    return j;
}

inline Json to_json(const SignedConicMeasure& mu) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["dim"] = mu.dim;
    Json atoms = Json::array();
    for (const auto& a : mu.atoms) {
        Json atom;
        atom["u"] = to_json(a.direction);
        atom["c"] = to_json(a.weight);
        atoms.push_back(std::move(atom));
    }
    j["atoms"] = std::move(atoms);
    return j;
}

inline ConicMeasure measure_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("atoms"))
        throw std::invalid_argument("measure document needs \"dim\" and \"atoms\"");
    ConicMeasure mu;
    mu.dim = j.at("dim").get<std::size_t>();
    for (const auto& a : j.at("atoms"))
        mu.atoms.push_back({vec_from_json(a.at("u")), rational_from_json(a.at("c"))});
    return mu;
}

inline SignedConicMeasure signed_measure_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("atoms"))
        throw std::invalid_argument("signed measure document needs \"dim\" and \"atoms\"");
    SignedConicMeasure mu;
    mu.dim = j.at("dim").get<std::size_t>();
    for (const auto& a : j.at("atoms"))
        mu.atoms.push_back({vec_from_json(a.at("u")), rational_from_json(a.at("c"))});
    return mu;
}

inline Json to_json(const PointMeasure& mu) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["dim"] = mu.dim;
    Json atoms = Json::array();
    for (const auto& a : mu.atoms) {
        Json atom;
        atom["x"] = to_json(a.point);
        atom["m"] = to_json(a.mass);
        atoms.push_back(std::move(atom));
    }
    j["atoms"] = std::move(atoms);
    return j;
}

inline PointMeasure point_measure_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("atoms"))
        throw std::invalid_argument("point measure document needs \"dim\" and \"atoms\"");
    PointMeasure mu;
    mu.dim = j.at("dim").get<std::size_t>();
    for (const auto& a : j.at("atoms"))
        mu.atoms.push_back({vec_from_json(a.at("x")), rational_from_json(a.at("m"))});
    return mu;
}

inline Json to_json(const Labeling& l) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["dim"] = l.dim;
    Json comps = Json::array();
    for (const auto& c : l.components) {
        Json m = to_json(c);
        m.erase("schema_version");
        comps.push_back(std::move(m));
    }
    j["components"] = std::move(comps);
    return j;
}

inline Labeling labeling_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("components"))
        throw std::invalid_argument("labeling document needs \"dim\" and \"components\"");
    Labeling l;
    l.dim = j.at("dim").get<std::size_t>();
    for (const auto& c : j.at("components")) l.components.push_back(signed_measure_from_json(c));
    validate_labeling(l);
    return l;
}

inline Json to_json(const BallFamily& f) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["dim"] = f.dim;
    Json balls = Json::array();
    for (const auto& b : f.balls) {
        Json fig = to_json(b);
        fig.erase("schema_version");
        balls.push_back(std::move(fig));
    }
    j["balls"] = std::move(balls);
    return j;
}

inline BallFamily family_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("balls"))
        throw std::invalid_argument("family document needs \"balls\"");
    BallFamily f;
    f.balls.clear();
    for (const auto& b : j.at("balls")) f.balls.push_back(figure_from_json(b));
    f.dim = j.contains("dim") ? j.at("dim").get<std::size_t>()
                              : (f.balls.empty() ? 0 : f.balls.front().dim);
    validate_ball_family(f);
    return f;
}

inline Json to_json(const LinearMap& a) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["dim"] = a.dim();
    Json rows = Json::array();
    for (const auto& r : a.rows) rows.push_back(to_json(r));
    j["rows"] = std::move(rows);
    return j;
}

inline LinearMap matrix_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("rows"))
        throw std::invalid_argument("matrix document needs \"rows\"");
    LinearMap a;
    for (const auto& r : j.at("rows")) a.rows.push_back(vec_from_json(r));
    for (const auto& r : a.rows)
        if (r.size() != a.rows.size()) throw std::invalid_argument("matrix must be square");
    return a;
}

inline Json to_json(const TransportCertificate& t) {
    Json j;
    j["rows"] = t.rows;
    j["cols"] = t.cols;
    Json entries = Json::array();
    for (const auto& row : t.entries) entries.push_back(to_json(row));
    j["entries"] = std::move(entries);
    return j;
}

inline TransportCertificate transport_from_json(const Json& j) {
    TransportCertificate t;
    t.rows = j.at("rows").get<std::size_t>();
    t.cols = j.at("cols").get<std::size_t>();
    for (const auto& row : j.at("entries")) t.entries.push_back(vec_from_json(row));
    return t;
}

inline Json to_json(const SeparatingSublinear& p) {
    Json j;
    Json pieces = Json::array();
    for (const auto& piece : p.pieces) pieces.push_back(to_json(piece));
    j["pieces"] = std::move(pieces);
    return j;
}

inline SeparatingSublinear sublinear_from_json(const Json& j) {
    SeparatingSublinear p;
    for (const auto& piece : j.at("pieces")) p.pieces.push_back(vec_from_json(piece));
    return p;
}

inline Json to_json(const SeparatingConvex& f) {
    Json j;
    Json pieces = Json::array();
    for (const auto& piece : f.pieces) {
        Json pj;
        pj["slope"] = to_json(piece.slope);
        pj["intercept"] = to_json(piece.intercept);
        pieces.push_back(std::move(pj));
    }
    j["pieces"] = std::move(pieces);
    return j;
}

inline SeparatingConvex convex_from_json(const Json& j) {
    SeparatingConvex f;
    for (const auto& piece : j.at("pieces"))
        f.pieces.push_back({vec_from_json(piece.at("slope")), rational_from_json(piece.at("intercept"))});
    return f;
}

inline Json to_json(const std::vector<RatVec>& vecs) {
    Json arr = Json::array();
    for (const auto& v : vecs) arr.push_back(to_json(v));
    return arr;
}

inline std::vector<RatVec> vec_list_from_json(const Json& j) {
    if (!j.is_array()) throw std::invalid_argument("expected an array of vectors");
    std::vector<RatVec> out;
    for (const auto& v : j) out.push_back(vec_from_json(v));
    return out;
}

}  // namespace gaugecalc
