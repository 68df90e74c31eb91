#include "cusptype/io.hpp"

#include <sstream>

namespace cusptype::io {

using ring::Kind;

json ring_to_json(const RingPtr& R) {
    if (!R) throw BadArgument("cannot serialize an empty ring");
    json j;
    j["kind"] = R->kind == Kind::Equal ? "equal" : "mixed";
    j["p"] = R->p;
    j["f"] = R->f;
    j["r"] = R->rw;
    // at f = 1 the stored modulus is a placeholder, not part of the format
    if (R->kind == Kind::Equal && R->f > 1) j["modulus"] = R->modulus;
    return j;
}

RingPtr ring_from_json(const json& j) {
    if (!j.is_object()) throw BadArgument("ring description must be a JSON object");
    ring::Spec spec;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "equal")
        spec.kind = Kind::Equal;
    else if (kind == "mixed")
        spec.kind = Kind::Mixed;
    else
        throw BadArgument("ring kind must be \"equal\" or \"mixed\"");
    spec.p = j.at("p").get<int>();
    spec.f = j.value("f", 1);
    spec.rw = j.at("r").get<int>();
    if (j.contains("modulus")) spec.modulus = j["modulus"].get<std::vector<int>>();
    return ring::Ring::make(spec);
}

json elem_to_json(const Elem& e) {
    if (!e.valid()) throw BadArgument("cannot serialize an empty element");
    const auto& R = e.ring();
    if (R->kind == Kind::Mixed) return static_cast<std::int64_t>(e.mixed_value());
    json arr = json::array();
    for (int i = 0; i < e.prec(); ++i) arr.push_back(e.digit(i));
    return arr;
}

Elem elem_from_json(const RingPtr& R, const json& j) {
    if (!R) throw BadArgument("element needs a ring");
    if (j.is_number_integer()) {
        if (R->kind != Kind::Mixed && R->f > 1)
            throw BadArgument("integer entries are only meaningful for f = 1");
        return Elem::from_int(R, j.get<std::int64_t>(), R->rw);
    }
    if (!j.is_array()) throw BadArgument("element must be an integer or a digit array");
    std::vector<int> digits = j.get<std::vector<int>>();
    if (static_cast<int>(digits.size()) > R->rw)
        throw BadArgument("element has more digits than the working precision");
    digits.resize(static_cast<std::size_t>(R->rw), 0);
    return Elem::from_digits(R, digits, R->rw);
}

json mat_to_json(const Mat& m) {
    if (!m.valid()) throw BadArgument("cannot serialize an empty matrix");
    json j;
    j["ring"] = ring_to_json(m.ring());
    j["n"] = m.n();
    json rows = json::array();
    for (int i = 0; i < m.n(); ++i) {
        json row = json::array();
        for (int k = 0; k < m.n(); ++k) row.push_back(elem_to_json(m.at(i, k)));
        rows.push_back(std::move(row));
    }
    j["entries"] = std::move(rows);
    return j;
}

Mat mat_from_json(const json& j) {
    if (!j.is_object()) throw BadArgument("matrix description must be a JSON object");
    RingPtr R = ring_from_json(j.at("ring"));
    const int n = j.at("n").get<int>();
    if (n < 1 || n > 8) throw BadArgument("matrix dimension out of range");
    const json& rows = j.at("entries");
    if (!rows.is_array() || static_cast<int>(rows.size()) != n)
        throw BadArgument("matrix needs exactly n rows");
    std::vector<Elem> entries;
    entries.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const json& row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw BadArgument("matrix rows need exactly n entries");
        for (int k = 0; k < n; ++k) entries.push_back(elem_from_json(R, row[static_cast<std::size_t>(k)]));
    }
    return Mat(R, n, std::move(entries));
}

json stratum_to_json(const strata::Stratum& s) {
    json j;
    j["order"] = s.order.kind == orders::OrderKind::M ? "M" : "I";
    j["n"] = s.level;
    json beta;
    beta["s"] = s.beta.s;
    beta["mat"] = mat_to_json(s.beta.m);
    j["beta"] = std::move(beta);
    return j;
}

strata::Stratum stratum_from_json(const json& j) {
    if (!j.is_object()) throw BadArgument("stratum description must be a JSON object");
    const std::string kind = j.at("order").get<std::string>();
    orders::OrderKind ok;
    if (kind == "M")
        ok = orders::OrderKind::M;
    else if (kind == "I")
        ok = orders::OrderKind::I;
    else
        throw BadArgument("order must be \"M\" or \"I\"");
    const int level = j.at("n").get<int>();
    const json& jb = j.at("beta");
    const int s = jb.at("s").get<int>();
    if (s < 0) throw BadArgument("beta denominator exponent must be >= 0");
    Mat m = mat_from_json(jb.at("mat"));
    return strata::Stratum{orders::Order{ok, m.n()}, level, matlin::FracMat{s, m}};
}

namespace {

std::string encode_elem(const Elem& e, int prec) {
    if (e.prec() < prec) throw InsufficientPrecision("encoding needs all requested digits");
    std::string out;
    for (int i = 0; i < prec; ++i) {
        if (i) out += '.';
        out += std::to_string(e.digit(i));
    }
    return out;
}

} // namespace

std::string encode_mat(const Mat& m, int prec) {
    if (!m.valid()) throw BadArgument("cannot encode an empty matrix");
    std::string out;
    for (int i = 0; i < m.n(); ++i)
        for (int j = 0; j < m.n(); ++j) {
            if (i || j) out += ';';
            out += encode_elem(m.at(i, j), prec);
        }
    return out;
}

std::string encode_opoly(const OPoly& f, int prec) {
    std::string out;
    for (std::size_t i = 0; i < f.c.size(); ++i) {
        if (i) out += ';';
        out += encode_elem(f.c[i], prec);
    }
    return out;
}

std::string atlas_csv(const std::vector<orbits::AtlasRow>& rows) {
    std::ostringstream out;
    out << "ring,n,r,l,lp,class_id,canonical_rep,charpoly,label,j,twist_c,verdict,regular,class_size\n";
    for (std::size_t id = 0; id < rows.size(); ++id) {
        const auto& row = rows[id];
        const auto& o = row.orbit;
        const auto& rec = row.record;
        Mat rep = orbits::orbit_rep(o);
        out << o.R->token() << ',' << o.n << ',' << o.level.r << ',' << o.level.l << ','
            << o.level.lp << ',' << id << ',' << encode_mat(rep, o.level.lp) << ','
            << encode_opoly(matlin::charpoly(rep), o.level.lp) << ',' << rec.label << ',';
        if (rec.label == "PiForm") out << rec.j;
        out << ',';
        if (rec.has_twist) out << rec.twist_c;
        out << ',' << orbits::verdict_name(rec.verdict) << ','
            << (rec.regular ? "true" : "false") << ',' << o.members.size() << '\n';
    }
    return out.str();
}

json report(const std::string& check, const json& params, bool pass) {
    json j;
    j["check"] = check;
    j["params"] = params;
    j["pass"] = pass;
    return j;
}

json report(const std::string& check, const json& params, bool pass, const json& witness) {
    json j = report(check, params, pass);
    j["witness"] = witness;
    return j;
}

} // namespace cusptype::io
