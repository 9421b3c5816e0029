#pragma once
// JSON forms of the library types. Numbers are exact strings: rationals "num/den", p-adics as
// digit arrays with their precision, balls as decimal center/radius strings that round-trip.
#include "ekn/cyclotomic.hpp"
#include "ekn/measures.hpp"
#include "ekn/mumford.hpp"
#include "ekn/theta.hpp"

#include "json.hpp"

namespace ekcli {

using nlohmann::json;

json to_json(const mpq_class& q);
mpq_class q_from_json(const json& j);

json to_json(const ekn::ComplexBall& b);
ekn::ComplexBall ball_from_json(const json& j);

json to_json(const ekn::Qp& x);
ekn::Qp qp_from_json(const json& j);

json to_json(const ekn::QuadElem& x);
ekn::QuadElem quad_from_json(const json& j);

json to_json(const ekn::CycElem& x);
json to_json(const ekn::TorsionPoint& t);
ekn::TorsionPoint torsion_from_json(const json& j);

json to_json(const ekn::CycExpansion& e);
json to_json(const ekn::EKExpansion& e);
ekn::EKExpansion ek_from_json(const json& j);
json to_json(const ekn::AlgebraicGuess& g, long d);
json to_json(const ekn::DamerellReport& r, long d);

json to_json(const ekn::FormalGroup& g);
std::shared_ptr<const ekn::FormalGroup> group_from_json(const json& j);
json to_json(const ekn::MeasureSeries& m);
ekn::MeasureSeries measure_from_json(const json& j);
json to_json(const ekn::PadicMoment& m);
json to_json(const ekn::YagerReport& r);

// sorted keys, two-space indent, trailing newline
std::string canonical(const json& j);
void write_file(const std::string& path, const json& j);
json read_file(const std::string& path);

}  // namespace ekcli
