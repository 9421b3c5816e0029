#pragma once
// Fixture files: TOML with the curve, period balls, torsion tables, embeddings and the Hecke
// character. Loading recomputes everything and rejects a file that disagrees.
#include "ekn/measures.hpp"

#include <string>

namespace ekcli {

struct Fixture {
    std::string name;
    ekn::CMContext ctx;
    ekn::HeckeCharacter chi;
    bool has_character = false;   // φ(α) = α·ε(α) with ε the unit ≡ α^{-1} needs (O_K/𝔣)^× = image of the units
    std::vector<long> split_primes;   // p ≥ 5 below 100, split in K
};

struct FixtureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// TOML text for a built-in curve ("lemniscatic" or "d3")
std::string fixture_toml(const std::string& curve);
// parse and validate at the given precision; throws FixtureError
Fixture load_fixture_file(const std::string& path, mpfr_prec_t prec);
Fixture load_fixture_text(const std::string& text, mpfr_prec_t prec);
// a built-in name, or a path to a .toml file
Fixture resolve_fixture(const std::string& curve_or_path, mpfr_prec_t prec);

}  // namespace ekcli
