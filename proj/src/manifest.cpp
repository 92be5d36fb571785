#include "idmk/manifest.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "idmk/config.hpp"

namespace idmk {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open for write: " + path.string());
  }
  return out;
}

}  // namespace

void write_eval_csv(const std::filesystem::path& path, const EvalTable& table) {
  auto out = open_out(path);
  out << "trajectory,seed,strategy,auc,fi,dtw,R\n";
  for (const auto& row : table.rows) {
    out << row.scenario << ',' << row.seed << ',' << row.strategy << ','
        << scalar_str(row.metrics.auc) << ',' << scalar_str(row.metrics.fi) << ','
        << scalar_str(row.metrics.dtw) << ',' << scalar_str(row.metrics.max_radius) << '\n';
  }
}

void write_medians_csv(const std::filesystem::path& path, std::span<const MedianRow> medians) {
  auto out = open_out(path);
  out << "trajectory,strategy,auc,fi,dtw\n";
  for (const auto& row : medians) {
    out << row.scenario << ',' << row.strategy << ',' << scalar_str(row.median_auc) << ','
        << scalar_str(row.median_fi) << ',' << scalar_str(row.median_dtw) << '\n';
  }
}

void write_trace_csv(const std::filesystem::path& path, const SelectorTrace& trace) {
  auto out = open_out(path);
  out << "t,fut_idx,dist\n";
  for (const auto& e : trace) {
    out << e.t << ',' << e.fut_idx << ',' << scalar_str(e.dist) << '\n';
  }
}

void write_epoch_csv(const std::filesystem::path& path, std::span<const LossBreakdown> epochs) {
  auto out = open_out(path);
  out << "epoch,total,button_loss,sticks_loss,button_err,sticks_err\n";
  for (std::size_t i = 0; i < epochs.size(); ++i) {
    const auto& e = epochs[i];
    out << (i + 1) << ',' << scalar_str(e.total) << ',' << scalar_str(e.button_loss) << ','
        << scalar_str(e.sticks_loss) << ',' << scalar_str(e.button_error) << ','
        << scalar_str(e.sticks_error) << '\n';
  }
}

void write_curve_csv(const std::filesystem::path& path,
                     std::span<const std::pair<Scalar, Scalar>> curve) {
  auto out = open_out(path);
  out << "r,coverage\n";
  for (const auto& [r, cov] : curve) {
    out << scalar_str(r) << ',' << scalar_str(cov) << '\n';
  }
}

void write_sweep_csv(const std::filesystem::path& path, std::span<const SweepRow> rows) {
  auto out = open_out(path);
  out << "strategy,radius,inner,outer,trajectory,auc,fi\n";
  for (const auto& row : rows) {
    out << row.strategy << ',' << scalar_str(row.radius) << ',' << scalar_str(row.inner) << ','
        << scalar_str(row.outer) << ',' << row.scenario << ',' << scalar_str(row.median_auc)
        << ',' << scalar_str(row.median_fi) << '\n';
  }
}

void write_manifest(const std::filesystem::path& path, Manifest m) {
  std::sort(m.files.begin(), m.files.end());
  nlohmann::json j;
  j["command"] = m.command;
  j["config_hash"] = m.config_hash;
  j["files"] = m.files;
  for (const auto& [k, v] : m.extra) {
    j["extra"][k] = v;
  }
  if (m.extra.empty()) {
    j["extra"] = nlohmann::json::object();
  }
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

}  // namespace idmk
