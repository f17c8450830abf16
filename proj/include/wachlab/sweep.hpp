#pragma once

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "family.hpp"
#include "reduction.hpp"

namespace wachlab {

// A grid run over weight vectors and shape vectors. `sample` picks that many
// distinct shape vectors from the full enumeration with the given seed;
// zero means enumerate all of them. The cap bounds the total row count.
struct SweepConfig {
  long long p = 3;
  int f = 1;
  long long k_min = 1;
  long long k_max = 1;
  int family = 0;  // 0 = general shapes; 25/28 sweep one regression family
  std::vector<std::vector<int>> type_vectors;  // explicit list; empty = all
  size_t sample = 0;
  unsigned long long seed = 0;
  size_t cap = 10000;
  int threads = 1;
  int trunc_override = 0;
};

struct SweepRow {
  FamilySpec spec;
  AnalysisReport report;
  std::string error;  // nonempty when analysis threw; report is then unset

  bool ok() const { return error.empty() && report.valid(); }
};

inline std::vector<std::vector<int>> all_type_vectors(int f) {
  std::vector<std::vector<int>> out;
  size_t count = 1;
  for (int i = 0; i < f; ++i) count *= 4;
  out.reserve(count);
  for (size_t mask = 0; mask < count; ++mask) {
    std::vector<int> v(static_cast<size_t>(f));
    size_t m = mask;
    for (int i = 0; i < f; ++i) {
      v[static_cast<size_t>(i)] = 1 + static_cast<int>(m % 4);
      m /= 4;
    }
    out.push_back(std::move(v));
  }
  return out;
}

// The job list in its deterministic order: weight vectors lexicographically
// (first slot most significant), shape vectors in listed order inside each.
inline std::vector<FamilySpec> sweep_jobs(const SweepConfig& cfg) {
  if (cfg.k_max < cfg.k_min) return {};
  if (cfg.f < 1) throw std::invalid_argument("sweep: f must be >= 1");

  std::vector<std::vector<int>> shapes;
  if (cfg.family != 0) {
    shapes.push_back({});  // the regression families carry no shape vector
  } else if (!cfg.type_vectors.empty()) {
    shapes = cfg.type_vectors;
  } else {
    shapes = all_type_vectors(cfg.f);
    if (cfg.sample > 0 && cfg.sample < shapes.size()) {
      // Engine output is reduced directly so the draw sequence depends only
      // on the seed, not on a distribution implementation.
      std::mt19937_64 eng(cfg.seed);
      std::vector<std::vector<int>> picked;
      std::set<size_t> seen;
      while (picked.size() < cfg.sample) {
        size_t idx = static_cast<size_t>(eng() % shapes.size());
        if (seen.insert(idx).second) picked.push_back(shapes[idx]);
      }
      shapes = std::move(picked);
    }
  }

  size_t span = static_cast<size_t>(cfg.k_max - cfg.k_min + 1);
  size_t weight_count = 1;
  for (int i = 0; i < cfg.f; ++i) {
    weight_count *= span;
    if (weight_count > cfg.cap + 1) break;  // avoid overflow; checked below
  }
  if (weight_count > cfg.cap || weight_count * shapes.size() > cfg.cap)
    throw Error(ErrorKind::CapExceeded,
                "sweep spans more than " + std::to_string(cfg.cap) +
                    " rows; raise --cap to run it anyway");

  std::vector<FamilySpec> jobs;
  jobs.reserve(weight_count * shapes.size());
  std::vector<long long> weights(static_cast<size_t>(cfg.f), cfg.k_min);
  for (;;) {
    for (const std::vector<int>& ty : shapes)
      jobs.push_back(FamilySpec{cfg.p, cfg.f, weights, ty, cfg.family, false});
    // increment the weight vector, last slot fastest
    int i = cfg.f - 1;
    while (i >= 0 && weights[static_cast<size_t>(i)] == cfg.k_max) {
      weights[static_cast<size_t>(i)] = cfg.k_min;
      --i;
    }
    if (i < 0) break;
    ++weights[static_cast<size_t>(i)];
  }
  return jobs;
}

inline std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
  std::vector<FamilySpec> jobs = sweep_jobs(cfg);
  std::vector<SweepRow> rows(jobs.size());

  auto work = [&](size_t start, size_t stride) {
    for (size_t i = start; i < jobs.size(); i += stride) {
      rows[i].spec = jobs[i];
      try {
        rows[i].report = analyze(jobs[i], cfg.trunc_override);
      } catch (const Error& e) {
        rows[i].error = e.what();
      } catch (const std::exception& e) {
        rows[i].error = e.what();
      }
    }
  };

  int threads = std::max(1, cfg.threads);
  if (threads == 1 || jobs.size() < 2) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(threads));
    for (int t = 0; t < threads; ++t)
      pool.emplace_back(work, static_cast<size_t>(t),
                        static_cast<size_t>(threads));
    for (std::thread& th : pool) th.join();
  }
  return rows;
}

namespace detail {

inline std::string joined(const std::vector<long long>& v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i)
    out += (i ? "|" : "") + std::to_string(v[i]);
  return out;
}

inline std::string joined(const std::vector<int>& v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i)
    out += (i ? "|" : "") + std::to_string(v[i]);
  return out;
}

}  // namespace detail

inline std::string sweep_csv_header() {
  return "p,f,family,weights,types,character_ell,exp_ell,exp_s,modulus,"
         "orbit,generator_slot,irreducible,det_ok,star_ok,admissible,"
         "oracle_agrees,wach_qk,valid,error";
}

inline std::string sweep_csv_row(const SweepRow& row) {
  const FamilySpec& s = row.spec;
  std::string out = std::to_string(s.p) + "," + std::to_string(s.f) + "," +
                    std::to_string(s.family) + "," + detail::joined(s.weights) +
                    "," + detail::joined(s.types) + ",";
  if (!row.error.empty()) {
    std::string msg = row.error;
    std::replace(msg.begin(), msg.end(), ',', ';');
    return out + ",,,,,,,,,,,,," + msg;
  }
  const AnalysisReport& r = row.report;
  long long exp_s = reduce_character(r.character_s, s.p).exp;
  auto flag = [](bool b) { return b ? "1" : "0"; };
  out += r.character_ell.to_string();
  out += "," + std::to_string(r.exponent_ell.exp);
  out += "," + std::to_string(exp_s);
  out += "," + std::to_string(r.reduction.modulus());
  out += "," + detail::joined(r.orbit);
  out += "," + std::to_string(r.generator_slot);
  out += std::string(",") + flag(r.irreducible) + "," + flag(r.det_ok) + "," +
         flag(r.star_ok) + "," + flag(r.admissible) + "," +
         flag(r.oracle_agrees) + "," + flag(r.wach.qk) + "," +
         flag(row.ok()) + ",";
  return out;
}

}  // namespace wachlab
