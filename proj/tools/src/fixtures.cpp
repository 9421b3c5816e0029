#include "ekcli/fixtures.hpp"

#include "ekcli/serialize.hpp"

#include <toml.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace ekn;

namespace ekcli {

namespace {

toml::table quad_table(const QuadElem& x) { return toml::table{{"re", q_str(x.re())}, {"im", q_str(x.im())}}; }

QuadElem quad_of(const toml::node_view<const toml::node>& n, long d) {
    auto re = n["re"].value<std::string>(), im = n["im"].value<std::string>();
    if (!re || !im) throw FixtureError("expected {re, im} strings");
    return QuadElem(d, q_parse(*re), q_parse(*im));
}

toml::table ball_table(const ComplexBall& b) {
    return toml::table{{"center_re", b.re_str()}, {"center_im", b.im_str()}, {"radius", b.rad().str(0)},
                       {"prec", static_cast<int64_t>(b.prec())}};
}

ComplexBall ball_of(const toml::node_view<const toml::node>& n) {
    json j{{"center_re", n["center_re"].value_or(std::string("nan"))},
           {"center_im", n["center_im"].value_or(std::string("nan"))},
           {"radius", n["radius"].value_or(std::string("nan"))},
           {"prec", n["prec"].value_or(int64_t(0))}};
    try {
        return ball_from_json(j);
    } catch (const std::exception& e) {
        throw FixtureError(std::string("bad period ball: ") + e.what());
    }
}

std::vector<long> split_primes(long d) {
    std::vector<long> out;
    for (long p = 5; p < 100; ++p) {
        if (mpz_class(p) % 2 == 0 || mpz_probab_prime_p(mpz_class(p).get_mpz_t(), 30) == 0) continue;
        try {
            PadicEmbedding::make(d, p, 2);
            out.push_back(p);
        } catch (const std::invalid_argument&) {
        }
    }
    return out;
}

std::optional<HeckeCharacter> try_character(const CMContext& c) {
    try {
        return fixture_character(c);
    } catch (const std::logic_error&) {
        return std::nullopt;
    }
}

void check_character(const toml::node_view<const toml::node>& ch, const HeckeCharacter& chi, long d) {
    if (!(quad_of(ch["conductor"], d) == chi.conductor)) throw FixtureError("character.conductor differs");
    if (ch["conductor_norm"].value_or(int64_t(0)) != chi.conductor_norm()) throw FixtureError("conductor_norm differs");
    if (ch["w_f"].value_or(int64_t(0)) != 1 || !chi.w_f_check) throw FixtureError("w_f = 1 fails");
    const toml::array* res = ch["residues"].as_array();
    const toml::array* val = ch["values"].as_array();
    if (!res || !val || res->size() != chi.residues.size() || val->size() != chi.values.size())
        throw FixtureError("character table has the wrong size");
    for (size_t k = 0; k < res->size(); ++k) {
        QuadElem r = quad_of(toml::node_view<const toml::node>((*res)[k]), d);
        QuadElem v = quad_of(toml::node_view<const toml::node>((*val)[k]), d);
        if (!(chi.phi(r) == v)) throw FixtureError("character value at " + r.str() + " differs");
    }
}

long least_sqrt(long d, long p) {
    for (long r = 0; r < p; ++r)
        if ((r * r + d) % p == 0) return r;
    return -1;
}

}  // namespace

std::string fixture_toml(const std::string& curve) {
    toml::table root;
    for (mpfr_prec_t prec : {512, 1024}) {
        CMContext c = fixture(curve, prec);
        if (prec == 512) {
            root.insert("curve", toml::table{{"name", curve}, {"d", static_cast<int64_t>(c.d)},
                                             {"g2", quad_table(c.g2)}, {"g3", quad_table(c.g3)}});
            root.insert("conductor", toml::table{{"f", quad_table(c.conductor)},
                                                 {"norm", static_cast<int64_t>(c.conductor_norm)}});
            if (auto chi = try_character(c)) {
                toml::array res, val;
                for (const auto& x : chi->residues) res.push_back(quad_table(x));
                for (const auto& x : chi->values) val.push_back(quad_table(x));
                root.insert("character", toml::table{{"conductor", quad_table(chi->conductor)},
                                                     {"conductor_norm", static_cast<int64_t>(chi->conductor_norm())},
                                                     {"residues", res}, {"values", val}, {"w_f", 1}});
            }
            toml::array primes;
            for (long p : split_primes(c.d))
                primes.push_back(toml::table{{"p", static_cast<int64_t>(p)}, {"sqrt_minus_d", static_cast<int64_t>(least_sqrt(c.d, p))}});
            root.insert("embeddings", primes);
            toml::array tors;
            for (int n = 2; n <= 4; ++n)
                for (int a = 0; a < n; ++a)
                    for (int b = 0; b < n; ++b) {
                        TorsionPoint t = TorsionPoint::make(mpq_class(a, n), mpq_class(b, n));
                        if (t.n != n) continue;
                        tors.push_back(toml::table{{"n", n}, {"c1", q_str(t.c1)}, {"c2", q_str(t.c2)}});
                    }
            root.insert("torsion", tors);
        }
        root.insert("periods_" + std::to_string(prec),
                    toml::table{{"omega1", ball_table(c.lattice.omega1)}, {"omega2", ball_table(c.lattice.omega2)},
                                {"A", ball_table(c.lattice.A)}});
    }
    std::ostringstream os;
    os << "# " << curve << " fixture; regenerate with `ekcli export fixture --curve " << curve << "`\n" << root << "\n";
    return os.str();
}

Fixture load_fixture_text(const std::string& text, mpfr_prec_t prec) {
    toml::table t;
    try {
        t = toml::parse(text);
    } catch (const toml::parse_error& e) {
        throw FixtureError(std::string("TOML: ") + e.what());
    }
    const toml::table& root = t;
    auto name = root["curve"]["name"].value<std::string>();
    if (!name || (*name != "lemniscatic" && *name != "d3")) throw FixtureError("curve.name must be lemniscatic or d3");
    Fixture f{*name, fixture(*name, prec), {}, false, {}};
    long d = root["curve"]["d"].value_or(int64_t(0));
    if (d != f.ctx.d) throw FixtureError("curve.d does not match the curve");
    if (!(quad_of(root["curve"]["g2"], d) == f.ctx.g2) || !(quad_of(root["curve"]["g3"], d) == f.ctx.g3))
        throw FixtureError("g2, g3 do not match the curve");

    for (const char* key : {"periods_512", "periods_1024"}) {
        if (!root[key]) continue;
        mpfr_prec_t pp = std::string(key) == "periods_512" ? 512 : 1024;
        CMContext c = pp == prec ? f.ctx : fixture(*name, pp);
        if (!ball_of(root[key]["omega1"]).overlaps(c.lattice.omega1) ||
            !ball_of(root[key]["omega2"]).overlaps(c.lattice.omega2) || !ball_of(root[key]["A"]).overlaps(c.lattice.A))
            throw FixtureError(std::string(key) + " disagrees with the computed periods");
    }

    if (!(quad_of(root["conductor"]["f"], d) == f.ctx.conductor) ||
        root["conductor"]["norm"].value_or(int64_t(0)) != f.ctx.conductor_norm)
        throw FixtureError("conductor differs");
    auto chi = try_character(f.ctx);
    if (root["character"]) {
        if (!chi) throw FixtureError("the character table cannot be validated for this curve");
        f.chi = *chi;
        f.has_character = true;
        check_character(root["character"], f.chi, d);
    } else if (chi) {
        throw FixtureError("character table missing");
    }

    if (const toml::array* em = root["embeddings"].as_array())
        for (const auto& e : *em) {
            long p = e.as_table()->at("p").value_or(int64_t(0));
            long r = e.as_table()->at("sqrt_minus_d").value_or(int64_t(-1));
            if (p < 5 || (r * r + d) % p != 0) throw FixtureError("embedding at p = " + std::to_string(p) + " invalid");
            f.split_primes.push_back(p);
        }
    if (const toml::array* tors = root["torsion"].as_array())
        for (const auto& e : *tors) {
            const toml::table& x = *e.as_table();
            TorsionPoint tp = TorsionPoint::make(q_parse(x["c1"].value_or(std::string("0"))),
                                                 q_parse(x["c2"].value_or(std::string("0"))));
            if (tp.n != x["n"].value_or(int64_t(0))) throw FixtureError("torsion entry " + tp.str() + " has the wrong order");
        }
    return f;
}

Fixture load_fixture_file(const std::string& path, mpfr_prec_t prec) {
    std::ifstream in(path);
    if (!in) throw FixtureError("fixture missing: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return load_fixture_text(ss.str(), prec);
}

Fixture resolve_fixture(const std::string& curve_or_path, mpfr_prec_t prec) {
    if (curve_or_path == "lemniscatic" || curve_or_path == "d3") {
        Fixture f{curve_or_path, fixture(curve_or_path, prec), {}, false, split_primes(curve_or_path == "d3" ? 3 : 1)};
        if (auto chi = try_character(f.ctx)) {
            f.chi = *chi;
            f.has_character = true;
        }
        return f;
    }
    if (!std::filesystem::exists(curve_or_path)) throw FixtureError("fixture missing: " + curve_or_path);
    return load_fixture_file(curve_or_path, prec);
}

}  // namespace ekcli
