#pragma once

#include "qcert/theorems.hpp"

#include <json.hpp>

namespace qcert::cli {

// Keys appear in a fixed order so identical runs serialize identically.
nlohmann::ordered_json to_json(const VerificationReport& rep, bool timing);
nlohmann::ordered_json to_json(const std::string& ineq_id, const TheoremSpec& spec,
                               const Crossover& c, double seconds, bool timing);

}  // namespace qcert::cli
