// ekcli: batch front end. Results are canonical JSON on stdout or --output.
// Exit codes: 0 pass, 1 a check failed, 2 configuration error.
#include "ekcli/checks.hpp"
#include "ekcli/fixtures.hpp"
#include "ekcli/serialize.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>

using namespace ekn;
using namespace ekcli;

namespace {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

TorsionPoint parse_torsion(const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    for (std::string x; std::getline(ss, x, ',');) parts.push_back(x);
    try {
        if (parts.size() == 3) {
            mpz_class n(parts[2]);
            if (n == 0) throw ConfigError("torsion order 0");
            return TorsionPoint::make(mpq_class(mpz_class(parts[0]), n), mpq_class(mpz_class(parts[1]), n));
        }
        if (parts.size() == 2) return TorsionPoint::make(q_parse(parts[0]), q_parse(parts[1]));
    } catch (const std::invalid_argument&) {
    }
    throw ConfigError("torsion point '" + s + "': expected c1,c2,n or c1,c2 with rational entries");
}

long env_long(const char* name, long fallback) {
    const char* v = std::getenv(name);
    if (!v || !*v) return fallback;
    char* end = nullptr;
    long x = std::strtol(v, &end, 10);
    if (*end) throw ConfigError(std::string(name) + " is not an integer");
    return x;
}

struct Run {
    std::string curve = "lemniscatic";
    long bits = 512;
    long prec = 16;
    long p = 13;
    std::string output;
    std::string z0 = "0,0", w0 = "0,0";

    Fixture fixture() const { return resolve_fixture(curve, bits); }
    PadicEmbedding embedding(const Fixture& f) const {
        if (auto why = unsupported_prime(f.name, p)) throw ConfigError(*why);
        return PadicEmbedding::make(f.ctx.d, p, prec);
    }
    void emit(const json& j) const {
        if (output.empty())
            std::cout << canonical(j);
        else
            write_file(output, j);
    }
};

json period_json(const PadicPeriod& P) {
    return {{"p", P.p.get_str()}, {"m", P.m}, {"in_Zp", P.in_Zp}, {"omega", P.in_Zp ? to_json(P.omega) : json(nullptr)},
            {"a_p", P.a_p}, {"alpha", to_json(P.alpha)}, {"validated_through", P.validated_through}};
}

json scan_json(const IntegralityScan& s) {
    return {{"min_valuation", s.min_valuation == kValInfinity ? json(nullptr) : json(s.min_valuation)},
            {"worst", {s.worst_i, s.worst_j}}, {"checked", s.checked}, {"integral", s.integral()}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Eisenstein-Kronecker numbers, their p-adic measures and checks"};
    app.require_subcommand(1);
    app.fallthrough();   // global options may follow the subcommand
    app.set_config("--config", "", "TOML run configuration");
    Run run;
    int rc = 0;
    try {
        run.bits = env_long("EKN_BITS", run.bits);
        run.prec = env_long("EKN_PADIC_PREC", run.prec);
    } catch (const ConfigError& e) {
        std::cerr << "ekcli: " << e.what() << "\n";
        return 2;
    }
    app.add_option("--curve", run.curve, "lemniscatic, d3, or a fixture .toml")->capture_default_str();
    app.add_option("--bits", run.bits, "complex precision (env EKN_BITS)")->capture_default_str()->check(CLI::Range(64, 1 << 16));
    app.add_option("--prec", run.prec, "p-adic precision m (env EKN_PADIC_PREC)")->capture_default_str()->check(CLI::Range(1, 256));
    app.add_option("--output,-o", run.output, "write JSON here instead of stdout");

    // cyclotomic
    auto* cyc = app.add_subcommand("cyclotomic", "the warm-up over 2 pi i Z");
    cyc->require_subcommand(1);
    int order = 1, num = 0, degree = 8, char_index = 0, bval = 1;
    auto* cexp = cyc->add_subcommand("expand", "expansion of g at z0 = 2 pi i num/order");
    cexp->add_option("--order", order)->required()->check(CLI::PositiveNumber);
    cexp->add_option("--num", num)->required();
    cexp->add_option("--degree", degree)->check(CLI::Range(1, 200));
    cexp->callback([&] { run.emit(to_json(g_expand(CycPoint::make(mpq_class(num, order)), degree))); });
    auto* cdir = cyc->add_subcommand("dirichlet", "L(chi, b) against the e* sum");
    cdir->add_option("--modulus", order)->required()->check(CLI::Range(2, 200));
    cdir->add_option("--char-index", char_index)->required();
    cdir->add_option("--b", bval)->required()->check(CLI::Range(1, 40));
    cdir->callback([&] {
        auto chars = dirichlet_characters(order);
        if (char_index < 0 || char_index >= static_cast<int>(chars.size())) throw ConfigError("no such character");
        DirichletCheck c = dirichlet_L_check(chars[char_index], bval, run.bits);
        run.emit({{"character", chars[char_index].label()}, {"b", bval}, {"lhs", to_json(c.lhs)}, {"rhs", to_json(c.rhs)},
                  {"ok", c.ok}});
        rc = c.ok ? 0 : 1;
    });

    // ek compute / damerell
    int amax = 2, bmax = 6;
    auto* ek = app.add_subcommand("ek", "Eisenstein-Kronecker expansions");
    ek->require_subcommand(1);
    auto* ekc = ek->add_subcommand("compute", "the table of e*_{a,b}(z0, w0) coefficients");
    for (auto* s : {ekc}) {
        s->add_option("--z0", run.z0, "c1,c2,n");
        s->add_option("--w0", run.w0, "c1,c2,n");
        s->add_option("--amax", amax)->check(CLI::Range(0, 40));
        s->add_option("--bmax", bmax)->check(CLI::Range(1, 40));
    }
    ekc->callback([&] {
        Fixture f = run.fixture();
        run.emit(to_json(ek_expansion(f.ctx, parse_torsion(run.z0), parse_torsion(run.w0), bmax, amax + 1, run.bits)));
    });
    auto* dam = app.add_subcommand("damerell", "recognise e*_{a,b}/A^a as algebraic numbers");
    dam->add_option("--z0", run.z0);
    dam->add_option("--w0", run.w0);
    dam->add_option("--amax", amax)->check(CLI::Range(0, 10));
    dam->add_option("--bmax", bmax)->check(CLI::Range(1, 10));
    dam->callback([&] {
        Fixture f = run.fixture();
        DamerellOptions opt;
        opt.ladder.erase(std::remove_if(opt.ladder.begin(), opt.ladder.end(), [&](long b) { return b < run.bits; }),
                         opt.ladder.end());
        if (opt.ladder.empty()) opt.ladder.push_back(run.bits);
        DamerellReport r = damerell_check(f.name, parse_torsion(run.z0), parse_torsion(run.w0), amax, bmax, opt);
        run.emit(to_json(r, f.ctx.d));
        rc = r.certified_count() == static_cast<int>(r.cells.size()) ? 0 : 1;
    });

    // padic
    auto* pad = app.add_subcommand("padic", "p-adic period and integrality");
    pad->require_subcommand(1);
    pad->add_option("--p", run.p)->capture_default_str();
    auto* pom = pad->add_subcommand("omega", "the period Omega_p");
    int check_degree = 30;
    pom->add_option("--check-degree", check_degree)->check(CLI::Range(1, 400));
    pom->callback([&] {
        Fixture f = run.fixture();
        PadicEmbedding e = run.embedding(f);
        int need = std::max<long>(check_degree, run.p * run.p + 1);
        FormalCurve fc = formal_expansions(f.ctx, need);
        json out{{"curve", f.name}};
        try {
            out["solver"] = period_json(solve_omega_p(fc, e, run.prec, check_degree));
        } catch (const OmegaNotInZp& ex) {
            out["solver"] = {{"in_Zp", false}, {"reason", ex.what()}};
            rc = 1;
        }
        out["frobenius"] = period_json(frobenius_period(fc, e, run.prec, need));
        run.emit(out);
    });
    std::string which = "theta";
    int ideg = 20;
    auto* pint = pad->add_subcommand("integrality", "valuations of the formal-parameter series");
    pint->add_option("--which", which)->check(CLI::IsMember({"theta", "kronecker", "translated"}));
    pint->add_option("--degree", ideg)->check(CLI::Range(1, 200));
    pint->add_option("--z0", run.z0);
    pint->add_option("--w0", run.w0);
    pint->callback([&] {
        Fixture f = run.fixture();
        PadicEmbedding e = run.embedding(f);
        json out{{"curve", f.name}, {"p", run.p}, {"which", which}, {"degree", ideg}};
        json vals = json::array();
        IntegralityScan s;
        if (which == "theta") {
            FormalCurve fc = formal_expansions(f.ctx, ideg + 3);
            PowerSeries<QuadElem> th = theta_hat(f.ctx, fc, ideg + 1).mul_xk(-1);
            s = scan_integrality(th, 0, ideg, e);
            for (int k = 0; k <= ideg; ++k)
                vals.push_back({{"index", k}, {"valuation", th.coeff(k).is_zero() ? json(nullptr) : json(valuation(th.coeff(k), e))}});
        } else {
            BiSeries<QuadElem> B;
            if (which == "kronecker") {
                B = kronecker_theta_hat(f.ctx, formal_expansions(f.ctx, ideg + 4), ideg).regular;
            } else {
                B = translated_theta_hat(f.ctx, formal_expansions(f.ctx, ideg + 4), parse_torsion(run.z0),
                                         parse_torsion(run.w0), ideg, run.p).series;
                out["z0"] = to_json(parse_torsion(run.z0));
                out["w0"] = to_json(parse_torsion(run.w0));
            }
            s = scan_integrality(B, ideg, e);
            for (int i = 0; i <= ideg && i < B.nz(); ++i)
                for (int j = 0; i + j <= ideg && j < B.nw(); ++j)
                    vals.push_back({{"index", {i, j}}, {"valuation", B(i, j).is_zero() ? json(nullptr) : json(valuation(B(i, j), e))}});
        }
        out["summary"] = scan_json(s);
        out["coefficients"] = vals;
        run.emit(out);
        rc = s.integral() ? 0 : 1;
    });

    // measures
    auto* mea = app.add_subcommand("measure", "two-variable p-adic measures");
    mea->require_subcommand(1);
    mea->add_option("--p", run.p)->capture_default_str();
    int mdeg = 8;
    bool character = false;
    auto* mb = mea->add_subcommand("build", "mu_{z0,w0} (or mu_phi with --character)");
    mb->add_option("--z0", run.z0);
    mb->add_option("--w0", run.w0);
    mb->add_option("--degree", mdeg)->check(CLI::Range(1, 80));
    mb->add_flag("--character", character, "the measure of the fixture Hecke character");
    mb->callback([&] {
        Fixture f = run.fixture();
        PadicEmbedding e = run.embedding(f);
        FormalCurve fc = formal_expansions(f.ctx, std::max(mdeg + 4, 64));
        if (character && !f.has_character) throw ConfigError(f.name + " has no validated Hecke character");
        MeasureSeries m = character ? mu_phi(f.ctx, fc, e, f.chi, mdeg)
                                    : mu_z0w0(f.ctx, fc, e, parse_torsion(run.z0), parse_torsion(run.w0), mdeg);
        run.emit(to_json(m));
    });
    std::string input, var = "both";
    int keep = -1, mi = 0, mj = 0;
    auto* mr = mea->add_subcommand("restrict", "restriction to (Z_p^x) in the chosen variables");
    mr->add_option("--input", input)->required()->check(CLI::ExistingFile);
    mr->add_option("--which", var)->check(CLI::IsMember({"s", "t", "both"}));
    mr->add_option("--keep", keep, "highest degree kept in a restricted variable");
    mr->callback([&] {
        MeasureSeries m = measure_from_json(read_file(input));
        UnitVariable w = var == "s" ? UnitVariable::S : var == "t" ? UnitVariable::T : UnitVariable::Both;
        run.emit(to_json(restrict_to_units(m, w, keep)));
    });
    auto* mm = mea->add_subcommand("moment", "the moment of x^i y^j");
    mm->add_option("--input", input)->required()->check(CLI::ExistingFile);
    mm->add_option("--i", mi)->required()->check(CLI::NonNegativeNumber);
    mm->add_option("--j", mj)->required()->check(CLI::NonNegativeNumber);
    mm->callback([&] { run.emit(to_json(moments(measure_from_json(read_file(input)), mi, mj))); });

    int ya = 0, yb = 1, ydeg = 32;
    auto* ya_cmd = app.add_subcommand("yager", "restricted character measure against L-values");
    ya_cmd->add_option("--a", ya)->check(CLI::Range(0, 10));
    ya_cmd->add_option("--b", yb)->check(CLI::Range(1, 10));
    ya_cmd->add_option("--p", run.p)->capture_default_str();
    ya_cmd->add_option("--degree", ydeg)->check(CLI::Range(4, 80));
    ya_cmd->callback([&] {
        Fixture f = run.fixture();
        PadicEmbedding e = run.embedding(f);
        if (!f.has_character) throw ConfigError(f.name + " has no validated Hecke character");
        YagerReport y = yager_check(f.ctx, formal_expansions(f.ctx, std::max(ydeg + 4, 64)), e, f.chi, ya, yb, ydeg);
        run.emit(to_json(y));
        rc = y.agree_mod >= y.precision && y.precision > 0 ? 0 : 1;
    });

    // verify
    std::string suite = "all";
    long vp = 0;
    int vdeg = 0, jobs = 1;
    bool no_timings = false;
    auto* ver = app.add_subcommand("verify", "acceptance suites");
    ver->add_option("suite", suite)->check(CLI::IsMember({"cyclotomic", "generating", "damerell", "integrality", "measures", "all"}));
    ver->add_option("--p", vp, "prime for the integrality checks");
    ver->add_option("--degree", vdeg, "degree for the integrality checks");
    ver->add_option("--jobs,-j", jobs)->check(CLI::Range(1, 64));
    ver->add_flag("--no-timings", no_timings, "omit timings (bit-identical reports)");
    ver->callback([&] {
        VerifyOptions opt;
        opt.bits = run.bits;
        if (vp) opt.p = vp;
        if (vdeg) opt.degree = vdeg;
        VerifyReport r = run_suite(suite, opt, jobs);
        for (const auto& c : r.checks)
            std::cerr << "[" << status_str(c.status) << "] " << c.id << " " << c.name << ": " << c.detail << "\n";
        run.emit(r.to_json(!no_timings));
        rc = r.failed() ? 1 : 0;
    });

    // export
    auto* exp = app.add_subcommand("export", "canonical files for regression");
    exp->require_subcommand(1);
    auto* efix = exp->add_subcommand("fixture", "the TOML fixture of a built-in curve");
    efix->callback([&] {
        std::string text = fixture_toml(run.curve);
        load_fixture_text(text, run.bits);   // what we write must load back
        if (run.output.empty()) {
            std::cout << text;
        } else {
            std::ofstream o(run.output);
            o << text;
        }
    });
    auto* ejson = exp->add_subcommand("json", "re-export a saved result canonically (import round-trip)");
    ejson->add_option("--input", input)->required()->check(CLI::ExistingFile);
    ejson->callback([&] {
        json j = read_file(input);
        std::string kind = j.value("kind", "");
        if (kind == "EKExpansion") j = to_json(ek_from_json(j));
        else if (kind == "MeasureSeries") j = to_json(measure_from_json(j));
        run.emit(j);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ConfigError& e) {
        std::cerr << "ekcli: " << e.what() << "\n";
        return 2;
    } catch (const FixtureError& e) {
        std::cerr << "ekcli: " << e.what() << "\n";
        return 2;
    } catch (const PreconditionError& e) {
        std::cerr << "ekcli: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "ekcli: " << e.what() << "\n";
        return 1;
    }
    return rc;
}
