#include "secretary/sweep.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>

#include <json.hpp>

#include "secretary/detail/parallel_for.hpp"
#include "secretary/format.hpp"

namespace secretary {

SweepObjective SweepObjective::for_utility(UtilityFunction w) {
    SweepObjective o;
    o.kind = Kind::utility;
    o.label = "utility:" + w.description();
    o.w = std::move(w);
    return o;
}

SweepObjective SweepObjective::for_topk(int k) {
    if (k < 1) throw std::invalid_argument("topk objective requires k >= 1");
    SweepObjective o;
    o.kind = Kind::topk;
    o.k = k;
    o.label = "topk:" + std::to_string(k);
    return o;
}

SweepObjective SweepObjective::parse(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("objective must be 'topk:<k>' or 'utility:<w-spec>'");
    std::string head = spec.substr(0, colon);
    std::string arg = spec.substr(colon + 1);
    if (head == "topk") {
        try {
            std::size_t used = 0;
            int k = std::stoi(arg, &used);
            if (used != arg.size()) throw std::invalid_argument(arg);
            return for_topk(k);
        } catch (const std::exception&) {
            throw std::invalid_argument("objective: bad top-k count '" + arg + "'");
        }
    }
    if (head == "utility") return for_utility(UtilityFunction::parse(arg));
    throw std::invalid_argument("objective: unknown kind '" + head + "'");
}

SweepCache::SweepCache(std::filesystem::path file) : file_(std::move(file)) {
    std::ifstream in(file_);
    if (!in) return;
    nlohmann::json doc = nlohmann::json::parse(in, nullptr, /*allow_exceptions=*/false);
    if (!doc.is_array()) return;
    for (const auto& item : doc) {
        SweepRecord r;
        r.objective = item.value("objective", "");
        r.n = item.value("n", 0);
        r.c_opt = item.value("c_opt", 0);
        r.value = item.value("value", 0.0);
        if (item.contains("bound") && !item["bound"].is_null())
            r.bound = item["bound"].get<double>();
        entries_[item.value("key", "")] = r;
    }
}

std::optional<SweepRecord> SweepCache::lookup(const std::string& key) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void SweepCache::insert(const std::string& key, const SweepRecord& record) {
    entries_[key] = record;
    save();
}

void SweepCache::save() const {
    nlohmann::json doc = nlohmann::json::array();
    for (const auto& [key, r] : entries_) {
        nlohmann::json item{{"key", key},
                            {"objective", r.objective},
                            {"n", r.n},
                            {"c_opt", r.c_opt},
                            {"value", r.value}};
        item["bound"] = r.bound ? nlohmann::json(*r.bound) : nlohmann::json(nullptr);
        doc.push_back(item);
    }
    std::ofstream out(file_);
    out << doc.dump(2) << '\n';
}

std::string SweepCache::key_for(const std::string& objective, int n,
                                const QuadratureConfig& q) {
    std::ostringstream config;
    config << "abs_tol=" << q.abs_tol << ";max_depth=" << q.max_depth << ";strategy="
           << (q.inner_sum_strategy == InnerSumStrategy::swapped_kernel ? "swapped-kernel"
                                                                        : "per-term");
    std::ostringstream key;
    key << objective << "|n=" << n << "|q=" << std::hex
        << std::hash<std::string>{}(config.str());
    return key.str();
}

std::vector<SweepRecord> run_sweep(const SweepObjective& objective,
                                   const std::vector<int>& n_grid,
                                   const QuadratureConfig& q,
                                   const SweepOptions& options) {
    if (objective.kind == SweepObjective::Kind::utility && !objective.w)
        throw std::domain_error("utility sweep objective is missing its utility");
    for (std::size_t i = 0; i < n_grid.size(); ++i) {
        if (n_grid[i] < 3) throw std::domain_error("sweep grid entries must be >= 3");
        if (i > 0 && n_grid[i] <= n_grid[i - 1])
            throw std::domain_error("sweep grid must be strictly increasing");
    }

    std::vector<SweepRecord> records(n_grid.size());
    std::vector<std::size_t> to_compute;
    for (std::size_t i = 0; i < n_grid.size(); ++i) {
        if (options.cache) {
            auto key = SweepCache::key_for(objective.label, n_grid[i], q);
            if (auto hit = options.cache->lookup(key)) {
                records[i] = *hit;
                continue;
            }
        }
        to_compute.push_back(i);
    }

    // grid points are independent; slots keep the output ordered by n, and
    // finished points go to the cache immediately so an interrupted sweep
    // resumes where it stopped
    std::mutex cache_mutex;
    detail::parallel_for(to_compute.size(), [&](std::size_t idx) {
        std::size_t i = to_compute[idx];
        int n = n_grid[i];
        SweepRecord r;
        r.objective = objective.label;
        r.n = n;
        if (objective.kind == SweepObjective::Kind::utility) {
            auto result = optimal_cutoff(*objective.w, n, q);
            r.c_opt = result.c_opt;
            r.value = result.value;
            r.bound = cutoff_upper_bound(*objective.w, n, options.bound_epsilon);
        } else {
            auto result = optimal_cutoff_topk(n, objective.k);
            r.c_opt = result.c_opt;
            r.value = result.p;
        }
        records[i] = r;
        if (options.cache) {
            std::scoped_lock lock(cache_mutex);
            options.cache->insert(SweepCache::key_for(objective.label, n, q), r);
        }
    });
    return records;
}

PowerLawFit fit_power_law(const std::vector<SweepRecord>& records) {
    if (records.size() < 3)
        throw std::domain_error("power-law fit needs at least 3 records");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const auto m = static_cast<double>(records.size());
    for (const auto& r : records) {
        if (r.c_opt < 1) throw std::domain_error("power-law fit needs c_opt >= 1");
        double x = std::log(static_cast<double>(r.n));
        double y = std::log(static_cast<double>(r.c_opt));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double det = m * sxx - sx * sx;
    if (det == 0) throw std::domain_error("power-law fit needs distinct n values");

    bool all_equal = true;
    for (const auto& r : records) all_equal &= (r.c_opt == records.front().c_opt);
    if (all_equal) throw std::domain_error("constant series");

    PowerLawFit fit;
    fit.exponent = (m * sxy - sx * sy) / det;
    fit.log_intercept = (sy - fit.exponent * sx) / m;

    double y_mean = sy / m;
    double ss_res = 0, ss_tot = 0;
    for (const auto& r : records) {
        double x = std::log(static_cast<double>(r.n));
        double y = std::log(static_cast<double>(r.c_opt));
        double fitted = fit.log_intercept + fit.exponent * x;
        ss_res += (y - fitted) * (y - fitted);
        ss_tot += (y - y_mean) * (y - y_mean);
    }
    fit.r_squared = ss_tot > 0 ? std::max(0.0, 1.0 - ss_res / ss_tot) : 1.0;
    return fit;
}

std::vector<bool> check_bound(const std::vector<SweepRecord>& records, double slack) {
    std::vector<bool> pass(records.size(), true);
    for (std::size_t i = 0; i < records.size(); ++i)
        if (records[i].bound && records[i].c_opt > slack * *records[i].bound)
            pass[i] = false;
    return pass;
}

std::string render_csv(const std::vector<SweepRecord>& records,
                       const std::optional<PowerLawFit>& fit) {
    std::ostringstream out;
    out << "objective,n,c_opt,value,bound,exponent_running\n";
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        out << r.objective << ',' << r.n << ',' << r.c_opt << ','
            << format_significant(r.value) << ',';
        if (r.bound) out << format_significant(*r.bound);
        out << ',';
        if (i + 1 >= 3) {
            try {
                auto running = fit_power_law(
                    std::vector<SweepRecord>(records.begin(), records.begin() + i + 1));
                out << format_significant(running.exponent);
            } catch (const std::domain_error&) {
                // degenerate prefix: leave the field empty
            }
        }
        out << '\n';
    }
    if (fit)
        out << "# fit: exponent=" << format_significant(fit->exponent)
            << " log_intercept=" << format_significant(fit->log_intercept)
            << " r_squared=" << format_significant(fit->r_squared) << '\n';
    return out.str();
}

}  // namespace secretary
