#include "qbai/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <thread>

#include "qbai/bai.hpp"
#include "qbai/bounds.hpp"
#include "qbai/classical.hpp"

namespace qbai {

const char* const kSweepCsvHeader =
    "instance_id,n,H,delta2,delta,modeled_quantum_cost,raw_oracle_calls,"
    "classical_se_pulls,classical_naive_pulls,lower_bound,success,seed";

BanditInstance make_family_instance(const std::string& family, int n, double delta2,
                                    double p1, double gamma) {
    if (n < 2) throw std::invalid_argument("family instance needs n >= 2");
    if (delta2 <= 0.0 || delta2 >= p1) {
        throw std::invalid_argument("family instance needs 0 < delta2 < p1");
    }
    std::vector<double> p(n);
    p[0] = p1;
    if (family == "uniform-gap") {
        for (int i = 1; i < n; ++i) p[i] = p1 - delta2;
    } else if (family == "geometric-gap") {
        double gap = delta2;
        for (int i = 1; i < n; ++i) {
            p[i] = p1 - gap;
            gap *= gamma;
            if (p1 - gap <= 0.0) gap = p1 - 0.01;  // keep deep arms valid
        }
    } else if (family == "two-cluster") {
        double far_gap = std::min(8.0 * delta2, p1 - 0.01);
        int near = (n - 1 + 1) / 2;
        for (int i = 1; i < n; ++i) {
            p[i] = i <= near ? p1 - delta2 : p1 - far_gap;
        }
    } else {
        throw std::invalid_argument("unknown family: " + family);
    }
    return make_instance(p);
}

double instance_p_floor(const BanditInstance& instance) {
    double floor = 0.49;
    for (double p : instance.p) floor = std::min(floor, std::min(p, 1.0 - p));
    if (floor <= 0.0) throw std::invalid_argument("instance has bias at 0 or 1");
    return floor;
}

int thread_cap() {
    if (const char* env = std::getenv("QBAI_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("loglog_slope: need >= 2 matched points");
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        double lx = std::log10(x[i]);
        double ly = std::log10(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw std::invalid_argument("loglog_slope: degenerate x values");
    return (n * sxy - sx * sy) / denom;
}

namespace {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

struct InstanceEntry {
    std::string id;
    BanditInstance instance;
    GapProfile gaps;
    double lower_bound = 0.0;
    std::uint64_t naive = 0;
};

}  // namespace

SweepResult run_sweep(const SweepSpec& spec) {
    if (spec.trials < 1) throw std::invalid_argument("run_sweep: trials >= 1");
    if (spec.delta <= 0.0 || spec.delta >= 0.5) {
        throw std::invalid_argument("run_sweep: delta in (0, 1/2)");
    }

    std::vector<InstanceEntry> entries;
    if (spec.family == "from-file") {
        if (spec.file.empty()) throw std::invalid_argument("run_sweep: from-file needs a path");
        InstanceEntry e;
        e.instance = load_instance(spec.file);
        e.id = "from-file-0";
        entries.push_back(std::move(e));
    } else {
        if (spec.n_values.empty() || spec.delta2_values.empty()) {
            throw std::invalid_argument("run_sweep: empty n or delta2 grid");
        }
        std::vector<std::pair<int, double>> grid;
        if (spec.paired) {
            if (spec.n_values.size() != spec.delta2_values.size()) {
                throw std::invalid_argument("run_sweep: paired grids must match in length");
            }
            for (std::size_t i = 0; i < spec.n_values.size(); ++i) {
                grid.emplace_back(spec.n_values[i], spec.delta2_values[i]);
            }
        } else {
            for (int n : spec.n_values) {
                for (double d2 : spec.delta2_values) grid.emplace_back(n, d2);
            }
        }
        int idx = 0;
        for (auto [n, d2] : grid) {
            InstanceEntry e;
            e.instance = make_family_instance(spec.family, n, d2, spec.p1, spec.gamma);
            e.id = spec.family + "-" + std::to_string(idx++);
            entries.push_back(std::move(e));
        }
    }
    for (auto& e : entries) {
        e.gaps = hardness(e.instance);
        e.lower_bound =
            adversary_bound(e.instance, spec.delta, instance_p_floor(e.instance))
                .intermediate;
        e.naive = naive_pulls(e.instance.n_arms(), e.gaps.delta2, spec.delta);
    }

    const std::size_t tasks = entries.size() * static_cast<std::size_t>(spec.trials);
    std::vector<SweepRow> rows(tasks);

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t task = next.fetch_add(1);
            if (task >= tasks) return;
            const std::size_t inst_idx = task / spec.trials;
            const InstanceEntry& e = entries[inst_idx];

            Rng rng = Rng::stream(spec.seed, static_cast<std::uint64_t>(task));
            BaiResult quantum = best_arm(e.instance, spec.delta, rng);
            ClassicalResult se = successive_elimination(e.instance, spec.delta, rng);

            SweepRow& row = rows[task];
            row.instance_id = e.id;
            row.n = e.instance.n_arms();
            row.H = e.gaps.H;
            row.delta2 = e.gaps.delta2;
            row.delta = spec.delta;
            row.modeled_quantum_cost = quantum.ledger.modeled_cost;
            row.raw_oracle_calls = quantum.ledger.oracle_calls;
            row.classical_se_pulls = se.pulls_total;
            row.classical_naive_pulls = e.naive;
            row.lower_bound = e.lower_bound;
            row.success = quantum.arm == e.instance.best;
            row.seed = static_cast<std::uint64_t>(task);
        }
    };

    int n_threads = std::min<std::size_t>(thread_cap(), tasks);
    std::vector<std::thread> pool;
    for (int t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    SweepResult result;
    result.rows = std::move(rows);

    std::map<std::string, std::pair<double, int>> q_mean, se_mean;
    std::map<std::string, double> h_of;
    double h_min = 0.0, h_max = 0.0;
    for (const SweepRow& row : result.rows) {
        q_mean[row.instance_id].first += row.modeled_quantum_cost;
        q_mean[row.instance_id].second += 1;
        se_mean[row.instance_id].first += static_cast<double>(row.classical_se_pulls);
        se_mean[row.instance_id].second += 1;
        h_of[row.instance_id] = row.H;
        if (row.lower_bound > row.modeled_quantum_cost) result.bound_consistent = false;
        h_min = h_min == 0.0 ? row.H : std::min(h_min, row.H);
        h_max = std::max(h_max, row.H);
    }
    if (h_of.size() >= 2) {
        std::vector<double> hs, qs, ses;
        for (const auto& [id, h] : h_of) {
            hs.push_back(h);
            qs.push_back(q_mean[id].first / q_mean[id].second);
            ses.push_back(se_mean[id].first / se_mean[id].second);
        }
        result.quantum_slope = loglog_slope(hs, qs);
        result.se_slope = loglog_slope(hs, ses);
    }
    if (h_min > 0.0) result.h_decades = std::log10(h_max / h_min);
    return result;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::string out = kSweepCsvHeader;
    out += '\n';
    for (const SweepRow& row : rows) {
        out += row.instance_id;
        out += ',' + std::to_string(row.n);
        out += ',' + format_double(row.H);
        out += ',' + format_double(row.delta2);
        out += ',' + format_double(row.delta);
        out += ',' + format_double(row.modeled_quantum_cost);
        out += ',' + std::to_string(row.raw_oracle_calls);
        out += ',' + std::to_string(row.classical_se_pulls);
        out += ',' + std::to_string(row.classical_naive_pulls);
        out += ',' + format_double(row.lower_bound);
        out += ',';
        out += row.success ? '1' : '0';
        out += ',' + std::to_string(row.seed);
        out += '\n';
    }
    return out;
}

}  // namespace qbai
