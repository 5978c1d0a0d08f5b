#include "flow/generator.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <stdexcept>
#include <thread>
#include <vector>

#include <fmt/format.h>

#include "flow/aggregate.hpp"
#include "flow/dynamics.hpp"
#include "flow/interventions.hpp"
#include "flow/population.hpp"

namespace flow {

UserData generate_user(const GeneratorConfig& config, std::uint32_t user_id) {
    UserData u;
    u.profile = sample_profile(config.seed, user_id, config);
    u.events = schedule_interventions(u.profile, config);
    u.records = simulate_user(u.profile, u.events, config);
    u.weeks = summarize_user(u.records, u.events, config.start_date);
    return u;
}

GenerationResult generate_dataset(const GeneratorConfig& config, const std::filesystem::path& out_dir,
                                  unsigned threads, const ProgressFn& progress) {
    if (const auto violations = validate_config(config); !violations.empty()) {
        throw ConfigError(violations.front().field,
                          fmt::format("invalid config: {}: {}", violations.front().field, violations.front().message));
    }
    const auto started = std::chrono::steady_clock::now();
    threads = std::max(1U, threads);

    DatasetWriter writer(out_dir, config.emit_denormalized);
    const std::uint32_t total = config.population_size;
    // Batches bound memory; each batch is simulated in parallel, then written in order.
    const std::uint32_t batch_size = std::max<std::uint32_t>(32, 8 * threads);
    std::vector<UserData> batch;

    for (std::uint32_t first = 1; first <= total; first += batch_size) {
        const std::uint32_t count = std::min(batch_size, total - first + 1);
        batch.assign(count, UserData{});

        std::atomic<std::uint32_t> next{0};
        std::exception_ptr failure;
        std::atomic<bool> failed{false};
        auto work = [&] {
            try {
                for (std::uint32_t i = next++; i < count && !failed; i = next++) {
                    batch[i] = generate_user(config, first + i);
                }
            } catch (...) {
                if (!failed.exchange(true)) failure = std::current_exception();
            }
        };
        const unsigned workers = std::min<unsigned>(threads, count);
        std::vector<std::jthread> pool;
        for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
        work();
        pool.clear();
        if (failure) std::rethrow_exception(failure);

        for (auto& user : batch) writer.write(user);
        if (progress) progress(first + count - 1, total);
    }

    GenerationResult result;
    result.counts = writer.finish();
    write_manifest(out_dir, config, result.counts);
    result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return result;
}

}  // namespace flow
