#include "qcert_cli/cli.hpp"

#include "qcert/error_budget.hpp"
#include "qcert/expansion.hpp"
#include "qcert/theorems.hpp"
#include "qcert_cli/report_json.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

namespace qcert::cli {

namespace {

using nlohmann::ordered_json;

constexpr int kDecimalDigits = 25;

std::filesystem::path cache_dir(const RunConfig& cfg) {
  return cfg.cache_path.empty() ? default_cache_dir() : std::filesystem::path(cfg.cache_path);
}

QTable load_table(const RunConfig& cfg, long n) {
  if (n > cfg.n_max) {
    throw CommandError(kShortTable, "index " + std::to_string(n) + " exceeds --n-max " +
                                std::to_string(cfg.n_max));
  }
  try {
    return QTable::load_or_compute(n, cache_dir(cfg));
  } catch (const CacheError& e) {
    throw CommandError(kCacheCorrupt, std::string("cache error: ") + e.what() +
                                  " (delete the file or pass --cache elsewhere)");
  }
}

CertifyOptions certify_options(const RunConfig& cfg) {
  CertifyOptions opt;
  opt.bits = cfg.precision_bits;
  opt.max_bits = std::max(1536, cfg.precision_bits);
  opt.max_depth = cfg.max_depth;
  return opt;
}

// "a..b" with 0 <= a <= b.
std::pair<long, long> parse_range(const std::string& text) {
  auto dots = text.find("..");
  if (dots == std::string::npos) {
    throw CommandError(kUsage, "range must look like a..b, got '" + text + "'");
  }
  try {
    std::size_t used_a = 0;
    std::size_t used_b = 0;
    std::string a = text.substr(0, dots);
    std::string b = text.substr(dots + 2);
    long lo = std::stol(a, &used_a);
    long hi = std::stol(b, &used_b);
    if (used_a != a.size() || used_b != b.size() || lo < 0 || hi < lo) {
      throw std::invalid_argument(text);
    }
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw CommandError(kUsage, "bad range '" + text + "'");
  }
}

void print_json(std::ostream& out, const ordered_json& j) { out << j.dump(2) << '\n'; }

std::string text_line(const VerificationReport& r, bool timing) {
  std::ostringstream os;
  os << r.theorem << ": " << r.status << " (threshold " << r.threshold << ", n_star " << r.n_star
     << ", exact " << r.exact.lo << ".." << r.exact.hi << ", failures " << r.exact.failures.size();
  if (r.sharpness_witness) {
    os << ", witness " << *r.sharpness_witness;
  }
  os << ")";
  if (timing) {
    os << " " << std::fixed;
    os.precision(2);
    os << r.seconds << "s";
  }
  return os.str();
}

// Published constants; any drift from them is reported loudly.
struct PublishedConstants {
  std::map<std::string, long> thresholds{
      {"A", 230},           {"A-companion", 279},         {"B", 272},
      {"B-companion", 309}, {"double-turan", 273},        {"double-turan-companion", 346},
      {"laguerre3", 651},   {"laguerre3-companion", 715},
  };
  long window14 = 5019;  // max over s = 0..4 of n(14, s)
  long window24 = 18502;  // max over s = 0..6 of n(24, s)
};

ordered_json paper_check(const RunConfig& cfg, std::vector<std::string>& problems) {
  PublishedConstants pc;
  ordered_json j;
  for (const auto& spec : theorem_specs()) {
    long expected = pc.thresholds.at(spec.id);
    if (spec.threshold != expected) {
      problems.push_back(spec.id + " threshold " + std::to_string(spec.threshold) +
                         " differs from " + std::to_string(expected));
    }
  }
  long w14 = 0;
  for (long s = 0; s <= 4; ++s) {
    w14 = std::max(w14, n_min(14, s, cfg.precision_bits));
  }
  long w24 = 0;
  for (long s = 0; s <= 6; ++s) {
    w24 = std::max(w24, n_min(24, s, cfg.precision_bits));
  }
  if (w14 > pc.window14) {
    problems.push_back("window max for N=14 is " + std::to_string(w14) + " > " +
                       std::to_string(pc.window14));
  }
  if (w24 > pc.window24) {
    problems.push_back("window max for N=24 is " + std::to_string(w24) + " > " +
                       std::to_string(pc.window24));
  }
  j["window_max_14"] = w14;
  j["window_max_24"] = w24;
  j["ok"] = problems.empty();
  j["problems"] = problems;
  return j;
}

}  // namespace

int exit_code(const std::string& report_status) {
  if (report_status == "pass") {
    return kPass;
  }
  return report_status == "inconclusive" ? kInconclusive : kFail;
}

int exit_code(CertStatus status) { return status == CertStatus::proved ? kPass : kInconclusive; }

int combine_exit_codes(int a, int b) {
  if (a == kFail || b == kFail) {
    return kFail;
  }
  return a == kInconclusive || b == kInconclusive ? kInconclusive : kPass;
}

int cmd_qtable(const RunConfig& cfg, const std::vector<long>& indices, std::ostream& out) {
  if (indices.empty()) {
    throw CommandError(kUsage, "qtable needs --n or --range");
  }
  long top = *std::max_element(indices.begin(), indices.end());
  QTable t = load_table(cfg, top);
  switch (cfg.format) {
    case Format::json: {
      ordered_json j = ordered_json::array();
      for (long n : indices) {
        // Decimal strings: the values outgrow every JSON number type.
        j.push_back({{"n", n}, {"q", t[n].get_str()}});
      }
      print_json(out, j);
      break;
    }
    case Format::csv:
      out << "n,q\n";
      for (long n : indices) {
        out << n << ',' << t[n].get_str() << '\n';
      }
      break;
    case Format::text:
      for (std::size_t i = 0; i < indices.size(); ++i) {
        out << (i ? "," : "") << t[indices[i]].get_str();
      }
      out << '\n';
      break;
  }
  return kPass;
}

int cmd_bounds(const RunConfig& cfg, long n_lo, long n_hi, long s, long N, std::ostream& out) {
  if (s < 0 || N < 1) {
    throw CommandError(kUsage, "bounds needs s >= 0 and N >= 1");
  }
  long first = n_min(N, s, cfg.precision_bits);
  if (n_lo < first) {
    throw CommandError(kUsage, "bounds for N=" + std::to_string(N) + ", s=" + std::to_string(s) +
                           " start at n=" + std::to_string(first));
  }
  QTable t = load_table(cfg, n_hi + s);
  ordered_json rows = ordered_json::array();
  if (cfg.format == Format::csv || cfg.format == Format::text) {
    out << "n,s,N,q_exact,lower,upper\n";
  }
  for (long n = n_lo; n <= n_hi; ++n) {
    Interval lo = bound_value(n, s, N, Side::lower, cfg.precision_bits);
    Interval hi = bound_value(n, s, N, Side::upper, cfg.precision_bits);
    std::string lower = lo.lo().to_decimal(kDecimalDigits, Round::Down);
    std::string upper = hi.hi().to_decimal(kDecimalDigits, Round::Up);
    std::string q = t[n + s].get_str();
    if (cfg.format == Format::json) {
      rows.push_back({{"n", n}, {"s", s}, {"N", N}, {"q_exact", q}, {"lower", lower},
                      {"upper", upper}});
    } else {
      out << n << ',' << s << ',' << N << ',' << q << ',' << lower << ',' << upper << '\n';
    }
  }
  if (cfg.format == Format::json) {
    print_json(out, rows);
  }
  return kPass;
}

int cmd_coeffs(const RunConfig& cfg, const std::string& family, long index_lo, long index_hi,
               long s, std::ostream& out) {
  static const std::vector<std::string> families{"a", "B", "Abar", "Bbar", "Chat", "Bhat"};
  if (std::find(families.begin(), families.end(), family) == families.end()) {
    throw CommandError(kUsage, "unknown coefficient family '" + family + "'");
  }
  if (index_lo < 0 || index_hi < index_lo || s < 0) {
    throw CommandError(kUsage, "coeffs needs 0 <= index and s >= 0");
  }
  ordered_json rows = ordered_json::array();
  for (long m = index_lo; m <= index_hi; ++m) {
    std::string value = coeff_by_name(family, m, s).to_string();
    if (cfg.format == Format::json) {
      rows.push_back({{"family", family}, {"index", m}, {"s", s}, {"value", value}});
    } else if (cfg.format == Format::csv) {
      out << family << ',' << m << ',' << s << ",\"" << value << "\"\n";
    } else {
      out << family << '[' << m << ',' << s << "] = " << value << '\n';
    }
  }
  if (cfg.format == Format::json) {
    print_json(out, rows);
  }
  return kPass;
}

int cmd_verify(const RunConfig& cfg, const std::string& theorem_id, std::ostream& out) {
  const TheoremSpec* spec = nullptr;
  try {
    spec = &theorem_by_id(theorem_id);
  } catch (const std::invalid_argument& e) {
    throw CommandError(kUsage, e.what());
  }
  QTable t = load_table(cfg, cfg.n_max);
  VerifyOptions opt;
  opt.certify = certify_options(cfg);
  VerificationReport rep;
  try {
    rep = verify_theorem(*spec, t, opt);
  } catch (const TableRangeError& e) {
    throw CommandError(kShortTable, std::string(e.what()) + "; raise --n-max");
  }
  if (cfg.format == Format::json) {
    print_json(out, to_json(rep, cfg.timing));
  } else {
    out << text_line(rep, cfg.timing) << '\n';
  }
  return exit_code(rep.status);
}

int cmd_certify(const RunConfig& cfg, const std::string& ineq_id, std::ostream& out) {
  const TheoremSpec* spec = nullptr;
  try {
    spec = &theorem_by_ineq(ineq_id);
  } catch (const std::invalid_argument& e) {
    throw CommandError(kUsage, e.what());
  }
  auto start = std::chrono::steady_clock::now();
  IneqPoly main = build_ineq(*spec, cfg.precision_bits);
  std::vector<IneqPoly> side = build_side(*spec, cfg.precision_bits);
  Crossover c = find_crossover(main, side, certify_options(cfg));
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (cfg.format == Format::json) {
    print_json(out, to_json(ineq_id, *spec, c, seconds, cfg.timing));
  } else {
    out << ineq_id << ": " << (c.status == CertStatus::proved ? "proved" : "inconclusive")
        << " for n >= " << c.n_star << " (window max " << c.window_max << ")\n";
  }
  return exit_code(c.status);
}

int cmd_reproduce_all(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<const TheoremSpec*> specs;
  if (cfg.theorems.empty()) {
    for (const auto& s : theorem_specs()) {
      specs.push_back(&s);
    }
  } else {
    for (const auto& id : cfg.theorems) {
      try {
        specs.push_back(&theorem_by_id(id));
      } catch (const std::invalid_argument& e) {
        throw CommandError(kUsage, e.what());
      }
    }
  }

  const QTable table = load_table(cfg, cfg.n_max);
  VerifyOptions opt;
  opt.certify = certify_options(cfg);

  struct Slot {
    VerificationReport rep;
    std::string error;
    bool short_table = false;
  };
  std::vector<Slot> slots(specs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < specs.size(); i = next++) {
      try {
        slots[i].rep = verify_theorem(*specs[i], table, opt);
      } catch (const TableRangeError& e) {
        slots[i].error = e.what();
        slots[i].short_table = true;
      } catch (const std::exception& e) {
        slots[i].error = e.what();
      }
    }
  };
  unsigned jobs = cfg.jobs != 0 ? cfg.jobs : std::max(1U, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, static_cast<unsigned>(specs.size()));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < jobs; ++k) {
    pool.emplace_back(worker);
  }
  worker();
  for (auto& th : pool) {
    th.join();
  }

  for (const auto& slot : slots) {
    if (slot.short_table) {
      throw CommandError(kShortTable, slot.error + "; raise --n-max");
    }
    if (!slot.error.empty()) {
      throw std::runtime_error(slot.error);
    }
  }

  int code = kPass;
  for (const auto& slot : slots) {
    code = combine_exit_codes(code, exit_code(slot.rep.status));
  }

  std::vector<std::string> problems;
  ordered_json check;
  if (cfg.paper_check) {
    check = paper_check(cfg, problems);
    for (const auto& p : problems) {
      err << "PAPER CONSTANT DRIFT: " << p << '\n';
    }
    if (!problems.empty()) {
      code = kFail;
    }
  }

  if (cfg.format == Format::json) {
    ordered_json j;
    j["reports"] = ordered_json::array();
    for (const auto& slot : slots) {
      j["reports"].push_back(to_json(slot.rep, cfg.timing));
    }
    j["all_pass"] = code == kPass;
    if (cfg.paper_check) {
      j["paper_check"] = check;
    }
    print_json(out, j);
  } else {
    for (const auto& slot : slots) {
      out << text_line(slot.rep, cfg.timing) << '\n';
    }
    if (cfg.paper_check) {
      out << "published constants: " << (problems.empty() ? "ok" : "DRIFT") << '\n';
    }
  }
  return code;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::string format = "json";
  bool no_timing = false;

  CLI::App app{"Exact distinct partitions, certified expansion bounds and inequality checks",
               "qcert"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--n-max", cfg.n_max, "Largest n kept in the q table")
      ->check(CLI::Range(0L, 10'000'000L));
  app.add_option("--precision", cfg.precision_bits, "Starting working precision in bits")
      ->check(CLI::Range(16, 1 << 16));
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--cache", cfg.cache_path, "Directory of the q table cache");
  app.add_option("--max-depth", cfg.max_depth, "Bisection depth limit")->check(CLI::Range(1, 200));
  app.add_flag("--no-timing", no_timing, "Leave wall-clock fields out of reports");

  auto* qtable = app.add_subcommand("qtable", "Print exact values of q(n)");
  std::vector<long> q_n;
  std::string q_range;
  qtable->add_option("--n", q_n, "Index (repeatable)")->check(CLI::NonNegativeNumber);
  qtable->add_option("--range", q_range, "Inclusive range a..b");

  auto* bounds = app.add_subcommand("bounds", "Tabulate the certified sandwich around q(n+s)");
  long b_n = -1;
  std::string b_range;
  long b_s = 0;
  long b_N = 14;
  bounds->add_option("--n", b_n, "Base index");
  bounds->add_option("--range", b_range, "Inclusive range of base indices a..b");
  bounds->add_option("--s", b_s, "Shift")->capture_default_str();
  bounds->add_option("--N", b_N, "Truncation order")->capture_default_str();

  auto* coeffs = app.add_subcommand("coeffs", "Dump expansion coefficients as exact strings");
  std::string c_family;
  long c_index = 0;
  long c_upto = -1;
  long c_s = 0;
  coeffs->add_option("family", c_family, "a, B, Abar, Bbar, Chat or Bhat")->required();
  coeffs->add_option("index", c_index, "Coefficient index")->required();
  coeffs->add_option("--s", c_s, "Shift")->capture_default_str();
  coeffs->add_option("--upto", c_upto, "Dump every index from `index` to this one");

  auto* verify = app.add_subcommand("verify", "Verify one theorem end to end");
  std::string v_id;
  verify->add_option("theorem", v_id, "Theorem id")->required();

  auto* certify = app.add_subcommand("certify", "Certify one inequality and report its crossover");
  std::string c_id;
  certify->add_option("inequality", c_id, "Inequality id")->required();

  auto* all = app.add_subcommand("reproduce-all", "Verify every theorem");
  all->add_flag("--paper-check", cfg.paper_check, "Also assert the published constants");
  all->add_option("--theorem", cfg.theorems, "Restrict to these theorem ids");
  all->add_option("--jobs", cfg.jobs, "Worker threads (0: one per core)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) {
    reversed.pop_back();  // program name
  }
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }
  cfg.format = format == "csv" ? Format::csv : format == "text" ? Format::text : Format::json;
  cfg.timing = !no_timing;
  // Tables read best as text or CSV unless a format was asked for.
  bool format_given = app.get_option("--format")->count() > 0;
  if (!format_given && (qtable->parsed() || coeffs->parsed())) {
    cfg.format = Format::text;
  }
  if (!format_given && bounds->parsed()) {
    cfg.format = Format::csv;
  }

  try {
    if (qtable->parsed()) {
      std::vector<long> indices = q_n;
      if (!q_range.empty()) {
        auto [lo, hi] = parse_range(q_range);
        for (long n = lo; n <= hi; ++n) {
          indices.push_back(n);
        }
      }
      if (q_range.empty() && q_n.empty()) {
        throw CommandError(kUsage, "qtable needs --n or --range");
      }
      return cmd_qtable(cfg, indices, out);
    }
    if (bounds->parsed()) {
      long lo = b_n;
      long hi = b_n;
      if (!b_range.empty()) {
        std::tie(lo, hi) = parse_range(b_range);
      } else if (b_n < 0) {
        throw CommandError(kUsage, "bounds needs --n or --range");
      }
      return cmd_bounds(cfg, lo, hi, b_s, b_N, out);
    }
    if (coeffs->parsed()) {
      return cmd_coeffs(cfg, c_family, c_index, c_upto < 0 ? c_index : c_upto, c_s, out);
    }
    if (verify->parsed()) {
      return cmd_verify(cfg, v_id, out);
    }
    if (certify->parsed()) {
      return cmd_certify(cfg, c_id, out);
    }
    if (all->parsed()) {
      return cmd_reproduce_all(cfg, out, err);
    }
  } catch (const CommandError& e) {
    err << "qcert: " << e.what() << '\n';
    return e.code();
  } catch (const std::exception& e) {
    err << "qcert: " << e.what() << '\n';
    return kFail;
  }
  return kUsage;
}

}  // namespace qcert::cli
