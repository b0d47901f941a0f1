#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "secretary/optimizer.hpp"
#include "secretary/topk.hpp"

namespace secretary {

/// What a sweep optimizes at each n: a utility objective (expected payoff
/// of the accepted applicant) or a top-k objective (probability of
/// accepting one of the k best).
struct SweepObjective {
    enum class Kind { utility, topk };
    Kind kind = Kind::utility;
    std::optional<UtilityFunction> w;
    int k = 0;
    std::string label;  // "utility:<w-spec>" or "topk:<k>"

    static SweepObjective for_utility(UtilityFunction w);
    static SweepObjective for_topk(int k);
    /// Parses "topk:<k>" or "utility:<w-spec>".
    static SweepObjective parse(const std::string& spec);
};

struct SweepRecord {
    std::string objective;
    int n = 0;
    int c_opt = 1;
    double value = 0;  // E at c_opt, or the success probability at c_opt
    std::optional<double> bound;  // sqrt((L/w_hat) n) when applicable
};

struct PowerLawFit {
    double exponent = 0;
    double log_intercept = 0;
    double r_squared = 0;
};

/// Record store keyed by (objective, n, quadrature-config hash) so long
/// sweeps resume after interruption. Backed by a JSON file; loading a
/// missing file yields an empty cache, and insert() persists eagerly.
class SweepCache {
public:
    explicit SweepCache(std::filesystem::path file);

    std::optional<SweepRecord> lookup(const std::string& key) const;
    void insert(const std::string& key, const SweepRecord& record);

    static std::string key_for(const std::string& objective, int n,
                               const QuadratureConfig& q);
    std::size_t size() const { return entries_.size(); }

private:
    void save() const;
    std::filesystem::path file_;
    std::map<std::string, SweepRecord> entries_;
};

struct SweepOptions {
    double bound_epsilon = 0.1;  // Lipschitz window for the bound
    SweepCache* cache = nullptr;
};

/// One record per grid point (strictly increasing n, each >= 3), ordered by
/// n ascending regardless of how the points were computed.
std::vector<SweepRecord> run_sweep(const SweepObjective& objective,
                                   const std::vector<int>& n_grid,
                                   const QuadratureConfig& q = {},
                                   const SweepOptions& options = {});

/// Ordinary least squares of log(c_opt) against log(n). Needs >= 3 records;
/// throws std::domain_error("constant series") when every c_opt is equal
/// (log-log slope undefined in any useful sense).
PowerLawFit fit_power_law(const std::vector<SweepRecord>& records);

/// Per-record bound check: fails only when a bound exists and
/// c_opt > slack * bound. Records without a bound pass vacuously.
std::vector<bool> check_bound(const std::vector<SweepRecord>& records,
                              double slack);

/// CSV contract: header `objective,n,c_opt,value,bound,exponent_running`,
/// one row per record (12 significant digits, '.' decimal separator,
/// empty fields where a value does not exist), plus a trailing
/// `# fit: ...` comment when a fit is supplied.
std::string render_csv(const std::vector<SweepRecord>& records,
                       const std::optional<PowerLawFit>& fit);

}  // namespace secretary
