#pragma once

#include <filesystem>

#include "idmk/model.hpp"

namespace idmk {

// Model files are a single JSON object: format version, input spec,
// shape, and per-layer weights at full precision. Loading validates the
// version and that layer widths chain input -> logits.
void save_checkpoint(const std::filesystem::path& path, const IdmModel& model);
IdmModel load_checkpoint(const std::filesystem::path& path);

}  // namespace idmk
