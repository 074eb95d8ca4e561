#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "specvaran/io.hpp"

namespace specvaran {

struct Record {
  std::string name;
  std::string status = "pass";  // pass | fail | skip
  json computed;
  json expected;
  double tolerance = 0.0;
  double runtime_ms = 0.0;
  std::string note;
};

struct Report {
  std::string command;
  json config = json::object();
  std::vector<Record> records;

  int count(const std::string& status) const {
    return static_cast<int>(std::count_if(records.begin(), records.end(),
                                          [&](const Record& r) { return r.status == status; }));
  }
  int exit_code() const { return count("fail") == 0 ? 0 : 1; }

  json to_json(bool with_timing = true) const {
    std::vector<Record> sorted = records;
    std::sort(sorted.begin(), sorted.end(),
              [](const Record& a, const Record& b) { return a.name < b.name; });
    json recs = json::array();
    for (const auto& r : sorted) {
      json o = {{"name", r.name},         {"status", r.status},
                {"computed", r.computed}, {"expected", r.expected},
                {"tolerance", r.tolerance}};
      if (with_timing) o["runtime_ms"] = r.runtime_ms;
      if (!r.note.empty()) o["note"] = r.note;
      recs.push_back(o);
    }
    return {{"schema", 1},
            {"command", command},
            {"config", config},
            {"records", recs},
            {"summary",
             {{"pass", count("pass")},
              {"fail", count("fail")},
              {"skip", count("skip")},
              {"total", static_cast<int>(records.size())}}}};
  }
};

struct Check {
  std::string name;
  std::function<Record()> run;
};

/**
 * Runs independent checks on a small worker pool. Each check owns its seed,
 * so results do not depend on scheduling. A throwing check becomes a failed
 * record carrying the error message.
 */
inline std::vector<Record> run_checks(const std::vector<Check>& checks, unsigned threads = 0) {
  if (threads == 0) threads = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  std::vector<Record> out(checks.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < checks.size(); i = next++) {
      const auto t0 = std::chrono::steady_clock::now();
      Record r;
      try {
        r = checks[i].run();
      } catch (const std::exception& e) {
        r.status = "fail";
        r.note = e.what();
      }
      r.name = checks[i].name;
      r.runtime_ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      out[i] = std::move(r);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return out;
}

/// pass iff |computed - expected| <= tol.
inline Record compare_record(double computed, double expected, double tol) {
  Record r;
  r.computed = computed;
  r.expected = expected;
  r.tolerance = tol;
  r.status = std::abs(computed - expected) <= tol ? "pass" : "fail";
  return r;
}

inline Record verdict_record(bool computed, bool expected) {
  Record r;
  r.computed = computed;
  r.expected = expected;
  r.status = computed == expected ? "pass" : "fail";
  return r;
}

}  // namespace specvaran
