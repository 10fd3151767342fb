#include "aclab/report_json.hpp"

#include <cstdio>

namespace aclab {

std::string rat_str(const Rat& q) { return q.str(); }

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Json to_json(const Interval& box) {
  Json a = Json::array(), b = Json::array();
  for (int i = 0; i < box.dim(); ++i) {
    a.push_back(box.lo()[i].str());
    b.push_back(box.hi()[i].str());
  }
  return Json{{"a", std::move(a)}, {"b", std::move(b)}};
}

Json to_json(const IntervalFamily& family) {
  Json arr = Json::array();
  for (const Interval& box : family.items) arr.push_back(to_json(box));
  return arr;
}

Json to_json(const ACClassSpec& cls) {
  Json j;
  switch (cls.kind) {
    case ACKind::AlphaAC:
      j["kind"] = "alpha-ac";
      j["alpha"] = cls.alpha.str();
      break;
    case ACKind::OneAC:
      j["kind"] = "1-ac";
      break;
    case ACKind::ZeroAC:
      j["kind"] = "0-ac";
      break;
    case ACKind::StrongZeroAC:
      j["kind"] = "strong-0-ac";
      break;
    case ACKind::ACH:
      j["kind"] = "ac-h";
      j["lambda"] = cls.lambda.str();
      break;
    case ACKind::OneACH:
      j["kind"] = "1-ac-h";
      j["lambda"] = cls.lambda.str();
      break;
    case ACKind::KAC:
      j["kind"] = "k-ac";
      j["shape"] = cls.ball_shape == BallShape::SupNorm ? "sup" : "euclidean";
      break;
  }
  j["n"] = cls.n;
  j["measure_mode"] = cls.measure_mode() == MeasureMode::Volume ? "volume" : "max_side_pow";
  if (auto t = cls.regularity_threshold()) j["regularity_threshold"] = t->str();
  return j;
}

Json to_json(const WitnessReport& r) {
  Json j;
  j["class"] = to_json(r.cls);
  j["delta"] = r.delta.str();
  j["epsilon"] = r.epsilon.str();
  j["family"] = to_json(r.family);
  j["sum_measure"] = r.s_meas.str();
  j["sum_osc"] = r.s_osc.approx;
  j["sum_osc_exact"] = r.s_osc.is_exact() ? Json(r.s_osc.exact->str()) : Json(nullptr);
  j["sum_osc_err"] = r.s_osc.err;
  j["verdict"] = r.violates() ? "violates" : "inconclusive";
  j["method"] = r.method;
  j["seed"] = r.seed;
  j["disjointness"] = to_string(r.family.mode);
  j["notes"] = r.notes;
  return j;
}

Json to_json(const Verdict& v) {
  Json j;
  j["sum_measure"] = v.s_meas.str();
  j["sum_osc"] = v.s_osc.approx;
  j["sum_osc_exact"] = v.s_osc.is_exact() ? Json(v.s_osc.exact->str()) : Json(nullptr);
  j["sum_osc_err"] = v.s_osc.err;
  j["passes"] = v.passes;
  j["family_size"] = v.family_size;
  j["disjointness"] = to_string(v.mode);
  j["notes"] = v.notes;
  return j;
}

void write_squares_jsonl(const Hierarchy& h, std::ostream& os) {
  for (int m = 1; m <= h.depth(); ++m) {
    const auto& sqs = h.level(m);
    for (std::size_t k = 0; k < sqs.size(); ++k) {
      Json j;
      j["level"] = m;
      j["index"] = k;
      j["center"] = Json::array({sqs[k].cx.str(), sqs[k].cy.str()});
      j["half_side"] = sqs[k].half.str();
      os << j.dump() << "\n";
    }
  }
}

void write_level_stats_tsv(const Hierarchy& h, std::ostream& os) {
  os << "m\tr_m\tomega_m\ttotal_measure\tmax_child_side\tr_omega_sq\n";
  for (int m = 1; m <= h.depth(); ++m) {
    LevelStats st = h.stats(m);
    os << m << "\t" << st.count.get_str() << "\t" << st.omega.str() << "\t"
       << st.total_measure.str() << "\t" << st.max_child_side.str() << "\t"
       << st.r_omega_sq.str() << "\n";
  }
}

std::string dump_json(const Json& j) { return j.dump(1); }

}  // namespace aclab
