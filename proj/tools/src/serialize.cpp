#include "ekcli/serialize.hpp"

#include <fstream>
#include <stdexcept>

using namespace ekn;

namespace ekcli {

json to_json(const mpq_class& q) { return q_str(q); }
mpq_class q_from_json(const json& j) { return q_parse(j.get<std::string>()); }

namespace {

Real real_from(const std::string& s, mpfr_prec_t prec) {
    Real r(prec);
    if (mpfr_set_str(r.get(), s.c_str(), 10, MPFR_RNDN) != 0) throw std::invalid_argument("bad decimal: " + s);
    return r;
}

mpz_class z_from(const json& j) { return mpz_class(j.get<std::string>()); }

}  // namespace

json to_json(const ComplexBall& b) {
    return {{"center_re", b.re_str()}, {"center_im", b.im_str()}, {"radius", b.rad().str(0)}, {"prec", b.prec()}};
}

ComplexBall ball_from_json(const json& j) {
    mpfr_prec_t p = j.at("prec").get<long>();
    return ComplexBall::from_reals(real_from(j.at("center_re"), p), real_from(j.at("center_im"), p),
                                   real_from(j.at("radius"), 64), p);
}

json to_json(const Qp& x) {
    json j{{"p", x.p().get_str()}, {"precision", x.abs_prec()}};
    if (x.is_zero()) {
        j["valuation"] = nullptr;
        j["digits"] = json::array();
    } else {
        j["valuation"] = x.valuation();
        j["digits"] = x.digits();
    }
    return j;
}

Qp qp_from_json(const json& j) {
    mpz_class p = z_from(j.at("p"));
    long prec = j.at("precision").get<long>();
    if (j.at("valuation").is_null()) return Qp(p, prec);
    long v = j.at("valuation").get<long>();
    auto d = j.at("digits").get<std::vector<long>>();
    mpz_class u = 0;
    for (auto it = d.rbegin(); it != d.rend(); ++it) u = u * p + *it;
    return Qp::from_unit(p, v, u, prec - v);
}

json to_json(const QuadElem& x) { return {{"d", x.d()}, {"re", q_str(x.re())}, {"im", q_str(x.im())}}; }
QuadElem quad_from_json(const json& j) {
    return QuadElem(j.at("d").get<long>(), q_from_json(j.at("re")), q_from_json(j.at("im")));
}

json to_json(const CycElem& x) {
    json c = json::array();
    for (const auto& q : x.coords()) c.push_back(q_str(q));
    return {{"f", x.order()}, {"coords", c}};
}

json to_json(const TorsionPoint& t) { return json::array({q_str(t.c1), q_str(t.c2)}); }
TorsionPoint torsion_from_json(const json& j) { return TorsionPoint::make(q_from_json(j.at(0)), q_from_json(j.at(1))); }

json to_json(const CycExpansion& e) {
    json c = json::array();
    for (const auto& x : e.coeffs) c.push_back(to_json(x));
    return {{"kind", "CycExpansion"}, {"f", e.f}, {"delta", e.delta}, {"coeffs", c}};
}

json to_json(const EKExpansion& e) {
    json t = json::array();
    for (int i = 0; i < e.table.nz(); ++i) {
        json row = json::array();
        for (int j = 0; j < e.table.nw(); ++j) row.push_back(to_json(e.table(i, j)));
        t.push_back(row);
    }
    json mixed = json::array();
    for (const auto& m : e.mixed) mixed.push_back(to_json(m));
    return {{"kind", "EKExpansion"}, {"z0", to_json(e.z0)}, {"w0", to_json(e.w0)},
            {"pair_pole_z", to_json(e.pair_pole_z)}, {"pole_w", to_json(e.pole_w)},
            {"delta_z", e.delta_z}, {"delta_w", e.delta_w}, {"A", to_json(e.A)},
            {"mixed", mixed}, {"table", t}};
}

EKExpansion ek_from_json(const json& j) {
    if (j.at("kind") != "EKExpansion") throw std::invalid_argument("not an EKExpansion");
    EKExpansion e;
    e.z0 = torsion_from_json(j.at("z0"));
    e.w0 = torsion_from_json(j.at("w0"));
    e.pair_pole_z = ball_from_json(j.at("pair_pole_z"));
    e.pole_w = ball_from_json(j.at("pole_w"));
    e.delta_z = j.at("delta_z");
    e.delta_w = j.at("delta_w");
    e.A = ball_from_json(j.at("A"));
    for (const auto& m : j.at("mixed")) e.mixed.push_back(ball_from_json(m));
    const json& t = j.at("table");
    int nz = static_cast<int>(t.size()), nw = nz ? static_cast<int>(t[0].size()) : 0;
    e.table = BiSeries<ComplexBall>(e.A, nz, nw);
    for (int i = 0; i < nz; ++i)
        for (int k = 0; k < nw; ++k) e.table(i, k) = ball_from_json(t[i][k]);
    return e;
}

json to_json(const AlgebraicGuess& g, long d) {
    json j{{"found", g.found}, {"certified", g.certified}, {"bits", g.bits}};
    if (!g.found) return j;
    json poly = json::array();
    for (const auto& c : g.poly) poly.push_back(c.get_str());
    j["poly"] = poly;
    j["residual"] = g.residual.str(6);
    j["radius"] = g.radius.str(6);
    j["checked_bits"] = g.checked;
    if (auto v = g.in_field(d)) j["value_in_K"] = to_json(*v);
    return j;
}

json to_json(const DamerellReport& r, long d) {
    json cells = json::array();
    for (const auto& c : r.cells)
        cells.push_back({{"cell", {c.a, c.b}}, {"value", to_json(c.value)}, {"guess", to_json(c.guess, d)},
                         {"certified", c.certified}});
    return {{"kind", "DamerellReport"}, {"curve", r.curve}, {"z0", to_json(r.z0)}, {"w0", to_json(r.w0)},
            {"certified", r.certified_count()}, {"total", r.cells.size()}, {"cells", cells}};
}

json to_json(const FormalGroup& g) {
    json log = json::array();
    for (int k = 0; k < g.log.order(); ++k) log.push_back(q_str(g.log.coeff(k)));
    return {{"name", g.name}, {"p", g.p.get_str()}, {"prec", g.prec}, {"omega_weight", g.omega_weight}, {"log", log}};
}

std::shared_ptr<const FormalGroup> group_from_json(const json& j) {
    auto g = std::make_shared<FormalGroup>();
    g->name = j.at("name");
    g->p = z_from(j.at("p"));
    g->prec = j.at("prec");
    g->omega_weight = j.at("omega_weight");
    const json& log = j.at("log");
    PowerSeries<mpq_class> l(mpq_class(0), 0, {}, static_cast<int>(log.size()));
    for (size_t k = 0; k < log.size(); ++k) l.set_coeff(static_cast<int>(k), q_from_json(log[k]));
    g->log = l;
    return g;
}

json to_json(const MeasureSeries& m) {
    json s = json::array();
    for (int i = 0; i < m.series.nz(); ++i) {
        json row = json::array();
        for (int k = 0; k < m.series.nw(); ++k) row.push_back(to_json(m.series(i, k)));
        s.push_back(row);
    }
    return {{"kind", "MeasureSeries"}, {"p", m.p().get_str()}, {"m", m.group->prec},
            {"provenance", m.descriptor}, {"group", to_json(*m.group)}, {"degree", m.degree},
            {"polynomial", m.polynomial}, {"min_precision", m.min_precision()}, {"series", s}};
}

MeasureSeries measure_from_json(const json& j) {
    if (j.at("kind") != "MeasureSeries") throw std::invalid_argument("not a MeasureSeries");
    MeasureSeries m;
    m.group = group_from_json(j.at("group"));
    m.degree = j.at("degree");
    m.polynomial = j.at("polynomial");
    m.descriptor = j.at("provenance");
    const json& s = j.at("series");
    int nz = static_cast<int>(s.size()), nw = nz ? static_cast<int>(s[0].size()) : 0;
    m.series = BiSeries<Qp>(Qp(m.group->p, m.group->prec), nz, nw);
    for (int i = 0; i < nz; ++i)
        for (int k = 0; k < nw; ++k) m.series(i, k) = qp_from_json(s[i][k]);
    return m;
}

json to_json(const PadicMoment& m) { return {{"value", to_json(m.value)}, {"omega_power", m.omega_power}, {"text", m.str()}}; }

json to_json(const YagerReport& r) {
    return {{"kind", "YagerReport"}, {"a", r.a}, {"b", r.b}, {"p", r.p.get_str()},
            {"lhs", to_json(r.lhs_moment)}, {"omega_power", r.omega_power}, {"rhs", to_json(r.rhs_value)},
            {"algebraic", to_json(r.algebraic)}, {"euler1", to_json(r.euler1)}, {"euler2", to_json(r.euler2)},
            {"agree_mod", r.agree_mod}, {"precision", r.precision}};
}

std::string canonical(const json& j) { return j.dump(2) + "\n"; }

void write_file(const std::string& path, const json& j) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << canonical(j);
}

json read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot read " + path);
    return json::parse(f);
}

}  // namespace ekcli
