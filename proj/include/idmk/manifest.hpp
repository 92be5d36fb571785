#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "idmk/evaluate.hpp"

namespace idmk {

// CSV writers for everything a run persists. Fixed header rows, LF line
// endings, scalars in shortest round-trip form: identical inputs produce
// byte-identical files. All throw std::runtime_error when the file cannot
// be opened.

// trajectory,seed,strategy,auc,fi,dtw,R
void write_eval_csv(const std::filesystem::path& path, const EvalTable& table);

// trajectory,strategy,auc,fi,dtw
void write_medians_csv(const std::filesystem::path& path, std::span<const MedianRow> medians);

// t,fut_idx,dist
void write_trace_csv(const std::filesystem::path& path, const SelectorTrace& trace);

// epoch,total,button_loss,sticks_loss,button_err,sticks_err (1-based)
void write_epoch_csv(const std::filesystem::path& path, std::span<const LossBreakdown> epochs);

// r,coverage
void write_curve_csv(const std::filesystem::path& path,
                     std::span<const std::pair<Scalar, Scalar>> curve);

// strategy,radius,inner,outer,trajectory,auc,fi
void write_sweep_csv(const std::filesystem::path& path, std::span<const SweepRow> rows);

// What a run produced and under which configuration. Keys come out
// sorted, file paths are relative to the manifest's directory, and
// nothing time-dependent is recorded, so a repeated run writes the same
// bytes.
struct Manifest {
  std::string command;
  std::string config_hash;
  std::vector<std::string> files;            // relative paths; sorted on write
  std::map<std::string, std::string> extra;  // free-form context fields
};

void write_manifest(const std::filesystem::path& path, Manifest m);

}  // namespace idmk
