// batch.hpp: seeded batches of independent runs and their CSV form.
#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "girthforge/process.hpp"

namespace girthforge {

inline constexpr const char* kRunCsvHeader =
    "seed,n,k,g,saturated,t_freeze,girth,log_choices,wall_ms";

// Runs template_config once per seed on up to `workers` threads. Records come
// back in seed order and match standalone runs exactly. Seeds must be distinct.
// make_observer(i), when given, supplies the observer for the i-th seed.
std::vector<RunRecord> batch_run(const ProcessConfig& template_config,
                                 std::span<const std::uint64_t> seeds, unsigned workers = 1,
                                 const std::function<RunObserver*(std::size_t)>& make_observer = {});

// Seeds base, base + 1, ..., base + trials - 1.
std::vector<std::uint64_t> seed_range(std::uint64_t base, std::size_t trials);

// Without wall_clock the wall_ms column holds "NA" so the bytes depend only
// on the seeds.
void write_run_csv(std::ostream& out, std::span<const RunRecord> records, bool wall_clock = false);
void write_run_csv(const std::filesystem::path& path, std::span<const RunRecord> records,
                   bool wall_clock = false);

// Calls fn(i) for i in [0, count) on up to `workers` threads.
void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& fn);

}  // namespace girthforge
