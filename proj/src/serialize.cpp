#include "p3p/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace p3p {

namespace {

void write(std::ostringstream& out, const Json& j, int indent, int depth) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    out << '\n' << std::string(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out << "{}";
        return;
      }
      out << '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out << ',';
        first = false;
        newline(depth + 1);
        out << Json(it.key()).dump() << (indent < 0 ? ":" : ": ");
        write(out, it.value(), indent, depth + 1);
      }
      newline(depth);
      out << '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out << "[]";
        return;
      }
      out << '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out << ',';
        first = false;
        newline(depth + 1);
        write(out, v, indent, depth + 1);
      }
      newline(depth);
      out << ']';
      return;
    }
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      out << (std::isfinite(x) ? format_double(x) : "null");
      return;
    }
    default: out << j.dump();
  }
}

std::string zero_index_name(int i) { return "s" + std::to_string(i); }

}  // namespace

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string dump_json(const Json& j, int indent) {
  std::ostringstream out;
  write(out, j, indent, 0);
  out << '\n';
  return out.str();
}

Json to_json(const Vec3& p) { return Json::array({p.x(), p.y(), p.z()}); }

Json to_json(const ControlTriangle& tri) {
  return {{"a", tri.a},
          {"b", tri.b},
          {"c", tri.c},
          {"angleA_rad", tri.angleA},
          {"angleB_rad", tri.angleB},
          {"angleC_rad", tri.angleC},
          {"acute", tri.is_acute()}};
}

Json to_json(const ViewAngles& ang) {
  return {{"alpha_rad", ang.alpha}, {"beta_rad", ang.beta}, {"gamma_rad", ang.gamma}};
}

Json to_json(const RegionReport& region) {
  Json toroids = Json::array();
  for (const auto& t : region.perToroid) {
    toroids.push_back({{"label", std::string(to_string(t.label))},
                       {"status", std::string(to_string(t.status))},
                       {"excess_rad", t.excess}});
  }
  return {{"toroids", toroids},
          {"outside_union", region.outsideUnion},
          {"on_outer_surface", region.onOuterSurface},
          {"inside_intersection_TA_TC", region.insideIntersectionOfAC}};
}

Json to_json(const SolveReport& rep, const ControlTriangle& tri, const Frame& frame) {
  const auto& q = rep.quartic;
  Json roots = Json::array();
  for (const auto& r : rep.rootSet.roots) roots.push_back({{"value", r.value}, {"multiplicity", r.multiplicity}});
  Json triplets = Json::array();
  for (const auto& t : rep.triplets) {
    Json jt = {{"s1", t.s1}, {"s2", t.s2}, {"s3", t.s3}, {"u", t.u}, {"v", t.v},
               {"class", std::string(to_string(t.tag.cls))}};
    if (t.tag.pair) jt["supplement_pair"] = std::string(to_string(*t.tag.pair));
    if (t.tag.cls == TripletClass::DegenerateZero) jt["zero_element"] = zero_index_name(t.tag.zeroIndex);
    jt["residual"] = t.residual;
    jt["root_multiplicity"] = t.rootMultiplicity;
    if (t.tag.cls == TripletClass::Solution) {
      Json pos = Json::array();
      try {
        for (const auto& p : positions_from_triplet(t, tri)) pos.push_back(to_json(frame.to_world(p)));
      } catch (const Error& e) {
        jt["positions_error"] = e.what();
      }
      jt["positions"] = pos;
    }
    triplets.push_back(jt);
  }
  Json failures = Json::array();
  for (const auto& f : rep.failures) {
    failures.push_back({{"v", f.v},
                        {"multiplicity", f.rootMultiplicity},
                        {"kind", std::string(to_string(f.kind))},
                        {"message", f.message}});
  }
  Json j = {{"triangle", to_json(tri)},
            {"angles", to_json(q.sourceAngles)},
            {"realizable", !rep.nonRealizable},
            {"quartic", {{"A4", q.A4}, {"A3", q.A3}, {"A2", q.A2}, {"A1", q.A1}, {"A0", q.A0}}},
            {"roots", roots},
            {"complex_pair_count", rep.rootSet.complexPairCount},
            {"triplets", triplets},
            {"n_solutions", rep.solution_count()},
            {"n_ssolutions", rep.s_solution_count()},
            {"failures", failures}};
  if (rep.region) j["region"] = to_json(*rep.region);
  return j;
}

Json to_json(const TheoremReport& rep) {
  const auto samples = [](const std::vector<TrialRecord>& v) {
    Json a = Json::array();
    for (const auto& r : v) {
      a.push_back({{"index", r.index},
                   {"point", to_json(r.point)},
                   {"n_solutions", r.nSolutions},
                   {"n_ssolutions", r.nSSolutions},
                   {"note", r.note}});
    }
    return a;
  };
  Json tallies = Json::object();
  for (const auto& [k, v] : rep.tallies) tallies[k] = v;
  return {{"theorem", rep.theoremId},
          {"seed", rep.seed},
          {"trials", rep.trials},
          {"consistent", rep.consistent},
          {"violations", rep.violations},
          {"exceptional", rep.exceptional},
          {"passed", rep.passed()},
          {"tallies", tallies},
          {"consistent_samples", samples(rep.consistentSamples)},
          {"violation_samples", samples(rep.violationSamples)},
          {"exceptional_samples", samples(rep.exceptionalSamples)}};
}

Json to_json(const CrossingEvent& ev) {
  return {{"toroid", std::string(short_name(ev.toroid))},
          {"t_cross", ev.tCross},
          {"direction", std::string(to_string(ev.direction))},
          {"count_before", ev.countBefore},
          {"count_after", ev.countAfter},
          {"s_count_before", ev.sCountBefore},
          {"s_count_after", ev.sCountAfter},
          {"s_pattern_before", ev.sPatternBefore},
          {"s_pattern_after", ev.sPatternAfter},
          {"min_abs_element_at_cross", ev.minAbsElementAtCross},
          {"outer_surface", ev.outerSurface},
          {"verdict", std::string(to_string(ev.verdict))},
          {"note", ev.note}};
}

Json to_json(const SweepResult& res, const Frame& frame) {
  Json samples = Json::array();
  for (const auto& s : res.samples) {
    Json status = Json::object();
    for (std::size_t k = 0; k < 6; ++k) {
      status[std::string(short_name(static_cast<ToroidLabel>(k)))] = std::string(to_string(s.status[k]));
    }
    samples.push_back({{"t", s.t},
                       {"point", to_json(frame.to_world(s.point))},
                       {"alpha_rad", s.angles.alpha},
                       {"beta_rad", s.angles.beta},
                       {"gamma_rad", s.angles.gamma},
                       {"status", status},
                       {"solved", s.solved},
                       {"n_solutions", s.nSolutions},
                       {"n_ssolutions", s.nSSolutions},
                       {"min_abs_element", s.minAbsElement}});
  }
  Json events = Json::array();
  for (const auto& e : res.events) events.push_back(to_json(e));
  Json changes = Json::array();
  for (const auto& c : res.rootChanges) {
    changes.push_back({{"t0", c.t0}, {"t1", c.t1}, {"count_before", c.countBefore}, {"count_after", c.countAfter}});
  }
  return {{"samples", samples}, {"events", events}, {"root_structure_changes", changes}};
}

Json to_json(const MatchReport& m, const OracleResult& oracle, int solverSolutions,
             const Frame& frame) {
  Json centers = Json::array();
  for (const auto& c : oracle.centers) centers.push_back(to_json(frame.to_world(c)));
  Json unmatchedS = Json::array();
  for (const auto& p : m.unmatchedSolver) unmatchedS.push_back(to_json(frame.to_world(p)));
  Json unmatchedO = Json::array();
  for (const auto& p : m.unmatchedOracle) unmatchedO.push_back(to_json(frame.to_world(p)));
  int upper = 0;
  for (const auto& c : oracle.centers) upper += c.z() > 0.0;
  return {{"grid", {oracle.nPhi, oracle.nPsi}},
          {"base_angle", oracle.baseAngle == 0 ? "alpha" : oracle.baseAngle == 1 ? "beta" : "gamma"},
          {"solver_count", solverSolutions},
          {"oracle_count", upper},
          {"solver_positions", m.solverPositions},
          {"oracle_centers", m.oracleCenters},
          {"match", m.perfect},
          {"distances", m.distances},
          {"max_distance", m.maxDistance},
          {"grid_too_coarse", oracle.gridTooCoarse},
          {"centers", centers},
          {"unmatched_solver", unmatchedS},
          {"unmatched_oracle", unmatchedO}};
}

std::string sweep_samples_csv(const SweepResult& res) {
  std::ostringstream out;
  out << "t,alpha_rad,beta_rad,gamma_rad,status_TA,status_TpiA,status_TB,status_TpiB,status_TC,"
         "status_TpiC,n_solutions,n_ssolutions,min_abs_element\n";
  for (const auto& s : res.samples) {
    out << format_double(s.t) << ',' << format_double(s.angles.alpha) << ','
        << format_double(s.angles.beta) << ',' << format_double(s.angles.gamma);
    for (const auto st : s.status) out << ',' << to_string(st);
    out << ',' << s.nSolutions << ',' << s.nSSolutions << ',' << format_double(s.minAbsElement) << '\n';
  }
  return out.str();
}

std::string sweep_events_csv(const SweepResult& res) {
  std::ostringstream out;
  out << "toroid,t_cross,direction,count_before,count_after,verdict\n";
  for (const auto& e : res.events) {
    out << short_name(e.toroid) << ',' << format_double(e.tCross) << ',' << to_string(e.direction) << ','
        << e.countBefore << ',' << e.countAfter << ',' << to_string(e.verdict) << '\n';
  }
  return out.str();
}

}  // namespace p3p
