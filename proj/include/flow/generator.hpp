#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>

#include "flow/config.hpp"
#include "flow/export.hpp"

namespace flow {

/// Profile, interventions, daily records and weekly summaries for one user.
UserData generate_user(const GeneratorConfig& config, std::uint32_t user_id);

struct GenerationResult {
    RowCounts counts;
    double wall_seconds = 0.0;
};

using ProgressFn = std::function<void(std::uint32_t users_done, std::uint32_t users_total)>;

/// Simulates the whole population on `threads` workers and writes every release
/// table plus manifest.json into `out_dir`. Output bytes do not depend on
/// `threads`: users are simulated in batches and written in user_id order.
GenerationResult generate_dataset(const GeneratorConfig& config, const std::filesystem::path& out_dir,
                                  unsigned threads = 1, const ProgressFn& progress = {});

}  // namespace flow
