#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "robench/dataset.hpp"
#include "robench/determinism.hpp"
#include "robench/model_client.hpp"
#include "robench/store.hpp"

namespace robench {

struct RunConfig {
  std::string manifest_path;
  double sample_fraction = 0.2;
  SeedScheme seeds;
  ModelEndpoint endpoint;
  PromptMode mode = PromptMode::Direct;
  GenerationParams gen;
  std::vector<std::string> filter;  // augmentation ids; empty = full registry
  std::string out_dir = "results";
  bool cache_corrupted = false;  // write corrupted PNGs under {out}/cache/
  int workers = 0;               // 0 -> endpoint.max_concurrent
  bool verbose = false;          // progress lines on stderr
};

// Stable evaluation order: Clean, NoImage, then registry order x severity
// order (low, mid, high); binary transforms contribute one key each.
// Throws ValidationError if the filter names an unknown augmentation.
std::vector<EvalConfigKey> plan_sweep(const RunConfig& cfg);

// Everything that affects recorded outputs, hashed; resume refuses stores
// created under a different hash.
std::string config_hash(const RunConfig& cfg);

struct RunStats {
  std::size_t planned = 0;    // |samples| x |plan|
  std::size_t skipped = 0;    // already resolved in the store
  std::size_t completed = 0;  // newly appended non-failure records
  std::size_t failed = 0;     // newly appended failure records
};

// Executes (or resumes) the sweep against the endpoint. Already-resolved
// (sample, key) pairs are skipped; failure records are retried. `cancel` is
// polled between tasks; returning true stops the run early (the store stays
// valid for resume).
RunStats run_sweep(const RunConfig& cfg, ResultStore& store,
                   const std::function<bool()>& cancel = {});

// Opens the store for cfg under {out}/{model}/{dataset} and runs the sweep.
ResultStore run(const RunConfig& cfg, const std::function<bool()>& cancel = {},
                RunStats* stats = nullptr);

// Store directory for cfg: {out}/{model}/{dataset}.
std::string store_dir(const RunConfig& cfg);

}  // namespace robench
