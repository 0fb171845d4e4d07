#include "girthforge/batch.hpp"

#include <atomic>
#include <exception>
#include <fstream>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

#include "girthforge/text_format.hpp"

namespace girthforge {

void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& fn) {
    if (count == 0) return;
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(count)));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    next = count;
                }
            }
        });
    }
    pool.clear();
    if (failure) std::rethrow_exception(failure);
}

std::vector<RunRecord> batch_run(const ProcessConfig& template_config,
                                 std::span<const std::uint64_t> seeds, unsigned workers,
                                 const std::function<RunObserver*(std::size_t)>& make_observer) {
    if (std::set<std::uint64_t>(seeds.begin(), seeds.end()).size() != seeds.size()) {
        throw ConfigError("batch seeds must be distinct");
    }
    validate(template_config);
    std::vector<RunRecord> records(seeds.size());
    parallel_for(seeds.size(), workers, [&](std::size_t i) {
        ProcessConfig config = template_config;
        config.seed = seeds[i];
        RunObserver* observer = make_observer ? make_observer(i) : nullptr;
        records[i] = run(config, observer);
    });
    return records;
}

std::vector<std::uint64_t> seed_range(std::uint64_t base, std::size_t trials) {
    std::vector<std::uint64_t> seeds(trials);
    for (std::size_t i = 0; i < trials; ++i) seeds[i] = base + i;
    return seeds;
}

void write_run_csv(std::ostream& out, std::span<const RunRecord> records, bool wall_clock) {
    std::string buf = kRunCsvHeader;
    buf += '\n';
    for (const RunRecord& r : records) {
        buf += std::to_string(r.seed) + ',' + std::to_string(r.n) + ',' + std::to_string(r.k) + ',' +
               std::to_string(r.girth_target) + ',' + (r.saturated ? "1" : "0") + ',' +
               std::to_string(r.t_freeze) + ',' +
               (r.girth_achieved ? std::to_string(*r.girth_achieved) : std::string("inf")) + ',' +
               format_real(r.log_choices) + ',' + (wall_clock ? format_real(r.wall_ms) : "NA") + '\n';
    }
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

void write_run_csv(const std::filesystem::path& path, std::span<const RunRecord> records, bool wall_clock) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    write_run_csv(out, records, wall_clock);
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace girthforge
