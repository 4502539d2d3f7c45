#pragma once

#include <string>

#include "json.hpp"

#include "p3p/experiments.hpp"
#include "p3p/oracle.hpp"
#include "p3p/scene.hpp"
#include "p3p/solver.hpp"

namespace p3p {

using Json = nlohmann::ordered_json;

/// JSON text with every floating-point number printed with 17 significant
/// digits (non-finite values become null). Output is a pure function of the
/// value, so equal reports give byte-identical text.
std::string dump_json(const Json& j, int indent = 2);

/// printf("%.17g")
std::string format_double(double x);

Json to_json(const Vec3& p);
Json to_json(const ControlTriangle& tri);
Json to_json(const ViewAngles& ang);
Json to_json(const RegionReport& region);
/// Positions are mapped through `frame` back to the scene's coordinates.
Json to_json(const SolveReport& rep, const ControlTriangle& tri, const Frame& frame = {});
Json to_json(const TheoremReport& rep);
Json to_json(const CrossingEvent& ev);
Json to_json(const SweepResult& res, const Frame& frame = {});
Json to_json(const MatchReport& m, const OracleResult& oracle, int solverSolutions,
             const Frame& frame = {});

std::string sweep_samples_csv(const SweepResult& res);
std::string sweep_events_csv(const SweepResult& res);

}  // namespace p3p
