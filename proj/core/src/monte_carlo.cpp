#include "feedin/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>
#include <type_traits>
#include <vector>

#include <boost/random/normal_distribution.hpp>

#include "feedin/error.hpp"

namespace feedin {

namespace {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Independent stream per path: the seed and path index are mixed through two
// rounds of splitmix64 before seeding the engine.
std::mt19937_64 path_engine(std::uint64_t seed, std::uint64_t path) {
    return std::mt19937_64(splitmix64(splitmix64(seed) ^ splitmix64(path + 1)));
}

struct PathGrid {
    int steps = 0;
    double dt = 0.0;
    double drift = 0.0;  // (mu - s^2/2) dt
    double vol = 0.0;    // s sqrt(dt)
    std::vector<double> discount;  // e^{-r t_k}, k = 0..steps
    double tail = 0.0;             // Q e^{-rT} / (r - mu)
};

PathGrid make_grid(double T, const MarketParams& market, const ProjectParams& project, int steps_per_year) {
    PathGrid g;
    g.steps = static_cast<int>(std::ceil(T * steps_per_year - 1e-9));
    g.dt = T / g.steps;
    g.drift = (market.mu - 0.5 * market.sigma * market.sigma) * g.dt;
    g.vol = market.sigma * std::sqrt(g.dt);
    g.discount.resize(static_cast<std::size_t>(g.steps) + 1);
    for (int k = 0; k <= g.steps; ++k) {
        g.discount[static_cast<std::size_t>(k)] = std::exp(-market.r * g.dt * k);
    }
    g.tail = project.Q * std::exp(-market.r * T) / (market.r - market.mu);
    return g;
}

template <class Flow>
double simulate_path(double P, const PathGrid& g, std::mt19937_64& engine, double sign, Flow flow) {
    boost::random::normal_distribution<double> normal;
    double log_price = std::log(P);
    double price = P;
    double prev = flow(price);
    double integral = 0.0;
    for (int k = 1; k <= g.steps; ++k) {
        log_price += g.drift + g.vol * sign * normal(engine);
        price = std::exp(log_price);
        const double next = flow(price) * g.discount[static_cast<std::size_t>(k)];
        integral += prev + next;
        prev = next;
    }
    return 0.5 * g.dt * integral + price * g.tail;
}

double flow_of(const FixedPrice& s, double, double Q) noexcept { return s.F * Q; }
double flow_of(const FixedPremium& s, double P, double Q) noexcept { return (P + s.F) * Q; }
double flow_of(const Floor& s, double P, double Q) noexcept { return std::max(P, s.F) * Q; }
double flow_of(const Collar& s, double P, double Q) noexcept { return std::min(std::max(P, s.F), s.C) * Q; }

}  // namespace

void validate(const SimConfig& cfg) {
    if (cfg.n_paths < 1000) {
        fail(ErrorKind::InvalidConfig, "n_paths must be at least 1000");
    }
    if (cfg.steps_per_year < 12) {
        fail(ErrorKind::InvalidConfig, "steps_per_year must be at least 12");
    }
    if (!(cfg.horizon_tail_years >= 0.0)) {
        fail(ErrorKind::InvalidConfig, "horizon_tail_years must be non-negative");
    }
}

double profit_flow(const Scheme& scheme, double P, const ProjectParams& project) noexcept {
    return std::visit([&](const auto& s) { return flow_of(s, P, project.Q); }, scheme);
}

McEstimate mc_project_value(const Scheme& scheme, double P, const MarketParams& market,
                            const ProjectParams& project, const SimConfig& cfg) {
    validate(cfg);
    validate(market);
    validate(project);
    validate(scheme);
    require(P > 0.0, "price must be positive");

    const double T = horizon(scheme);
    const std::uint64_t n = cfg.n_paths;
    if (T == 0.0) {
        return {P * project.Q / (market.r - market.mu), 0.0, n};
    }

    const PathGrid grid = make_grid(T, market, project, cfg.steps_per_year);
    std::vector<double> samples(n);
    auto run_batch = [&](const auto& s, std::uint64_t begin, std::uint64_t end) {
        using S = std::decay_t<decltype(s)>;
        const double Q = project.Q;
        if constexpr (std::is_same_v<S, FixedPrice>) {
            // The flow ignores the price path, so only P_T is random: draw it
            // in one exact step and integrate the fixed leg on the same grid.
            double weights = 0.0;
            for (int k = 1; k <= grid.steps; ++k) {
                weights += grid.discount[static_cast<std::size_t>(k - 1)] + grid.discount[static_cast<std::size_t>(k)];
            }
            const double fixed_leg = 0.5 * grid.dt * weights * s.F * Q;
            const double drift = (market.mu - 0.5 * market.sigma * market.sigma) * T;
            const double vol = market.sigma * std::sqrt(T);
            for (std::uint64_t i = begin; i < end; ++i) {
                auto engine = path_engine(cfg.seed, i);
                boost::random::normal_distribution<double> normal;
                const double z = normal(engine);
                double tail = std::exp(drift + vol * z);
                if (cfg.antithetic) {
                    tail = 0.5 * (tail + std::exp(drift - vol * z));
                }
                samples[i] = fixed_leg + P * tail * grid.tail;
            }
            return;
        }
        auto flow = [&s, Q](double price) { return flow_of(s, price, Q); };
        for (std::uint64_t i = begin; i < end; ++i) {
            auto engine = path_engine(cfg.seed, i);
            double v = simulate_path(P, grid, engine, 1.0, flow);
            if (cfg.antithetic) {
                auto mirror = path_engine(cfg.seed, i);
                v = 0.5 * (v + simulate_path(P, grid, mirror, -1.0, flow));
            }
            samples[i] = v;
        }
    };

    auto run = [&](std::uint64_t begin, std::uint64_t end) {
        // Dispatch once per batch so the per-step flow is inlined.
        std::visit([&](const auto& s) { run_batch(s, begin, end); }, scheme);
    };

    unsigned threads = cfg.threads != 0 ? cfg.threads : std::max(1U, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, n));
    if (threads <= 1) {
        run(0, n);
    } else {
        std::vector<std::jthread> pool;
        const std::uint64_t chunk = (n + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            const std::uint64_t begin = t * chunk;
            const std::uint64_t end = std::min(n, begin + chunk);
            if (begin < end) {
                pool.emplace_back(run, begin, end);
            }
        }
    }

    double sum = 0.0;
    for (double v : samples) {
        sum += v;
    }
    const double mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (double v : samples) {
        ss += (v - mean) * (v - mean);
    }
    const double variance = ss / static_cast<double>(n - 1);
    return {mean, std::sqrt(variance / static_cast<double>(n)), n};
}

}  // namespace feedin
