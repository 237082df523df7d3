#include "qcert_cli/report_json.hpp"

namespace qcert::cli {

using nlohmann::ordered_json;

namespace {

ordered_json seconds_field(double seconds, bool timing) {
  return timing ? ordered_json(seconds) : ordered_json(nullptr);
}

}  // namespace

ordered_json to_json(const VerificationReport& rep, bool timing) {
  ordered_json j;
  j["theorem"] = rep.theorem;
  j["threshold"] = rep.threshold;
  j["shift"] = rep.shift;
  j["n_star"] = rep.n_star;
  // Shifted index, inclusive on both ends.
  j["exact_range"] = {rep.exact.lo, rep.exact.hi};
  j["sharpness_witness"] =
      rep.sharpness_witness ? ordered_json(*rep.sharpness_witness) : ordered_json(nullptr);
  j["status"] = rep.status;
  j["precision_bits"] = rep.precision_bits;
  j["subdivisions"] = rep.subdivisions;
  j["seconds"] = seconds_field(rep.seconds, timing);
  j["window_max"] = rep.window_max;
  j["within_window"] = rep.within_window;
  j["exact_failures"] = rep.exact.failures;
  if (!rep.stage.empty()) {
    j["stage"] = rep.stage;
  }
  j["notes"] = rep.notes;
  return j;
}

ordered_json to_json(const std::string& ineq_id, const TheoremSpec& spec, const Crossover& c,
                     double seconds, bool timing) {
  ordered_json j;
  j["inequality"] = ineq_id;
  j["theorem"] = spec.id;
  j["N"] = spec.N_used;
  j["status"] = c.status == CertStatus::proved ? "proved" : "inconclusive";
  j["n_star"] = c.n_star;
  j["window_max"] = c.window_max;
  j["within_window"] = c.within_window;
  j["leading_zero_degree"] = c.leading_zero_degree;
  j["precision_bits"] = c.precision_bits;
  j["subdivisions"] = c.subdivisions;
  j["reference_cutoff"] = spec.crossover_published;
  j["not_proved"] = c.failed;
  j["seconds"] = seconds_field(seconds, timing);
  return j;
}

}  // namespace qcert::cli
