#pragma once

#include "qcert/certify.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcert::cli {

enum ExitCode : int {
  kPass = 0,
  kFail = 1,
  kInconclusive = 2,
  kUsage = 64,
  kShortTable = 65,
  kCacheCorrupt = 66,
};

// The cmd_* functions report usage and environment problems by throwing this.
class CommandError : public std::runtime_error {
 public:
  CommandError(int code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  int code() const { return code_; }

 private:
  int code_;
};

enum class Format { json, csv, text };

struct RunConfig {
  long n_max = 20000;
  int precision_bits = 192;
  Format format = Format::json;
  std::string cache_path;  // empty: QCERT_CACHE_DIR or the per-user cache
  std::vector<std::string> theorems;
  int max_depth = 60;
  bool timing = true;
  bool paper_check = false;
  unsigned jobs = 0;  // 0: hardware concurrency
};

// Exit code for a verification report status ("pass", "fail", "inconclusive").
int exit_code(const std::string& report_status);
int exit_code(CertStatus status);
// A failure outranks an inconclusive result, which outranks a pass.
int combine_exit_codes(int a, int b);

// Parses argv and dispatches to a subcommand. Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int cmd_qtable(const RunConfig& cfg, const std::vector<long>& indices, std::ostream& out);
int cmd_bounds(const RunConfig& cfg, long n_lo, long n_hi, long s, long N, std::ostream& out);
int cmd_coeffs(const RunConfig& cfg, const std::string& family, long index_lo, long index_hi,
               long s, std::ostream& out);
int cmd_verify(const RunConfig& cfg, const std::string& theorem_id, std::ostream& out);
int cmd_certify(const RunConfig& cfg, const std::string& ineq_id, std::ostream& out);
int cmd_reproduce_all(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace qcert::cli
