#include "synthcast/sim/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

#include "synthcast/rng.hpp"

namespace synthcast::sim {

std::string_view to_string(SimStatus s) noexcept {
    switch (s) {
        case SimStatus::completed: return "completed";
        case SimStatus::wall_time_exceeded: return "wall_time_exceeded";
        case SimStatus::extinct: return "extinct";
    }
    return "unknown";
}

SimStatus parse_sim_status(std::string_view text) {
    if (text == "completed") return SimStatus::completed;
    if (text == "wall_time_exceeded") return SimStatus::wall_time_exceeded;
    if (text == "extinct") return SimStatus::extinct;
    throw std::invalid_argument("unknown simulation status '" + std::string(text) + "'");
}

double infection_risk(std::span<const double> history, double position, std::int32_t load,
                      const SimParams& params) noexcept {
    const double hom = params.fixed.homologous_immunity;
    double immunity = 0.0;
    for (double h : history)
        immunity = std::max(immunity, hom - params.fixed.smith_conversion * std::abs(position - h));
    immunity = std::min(immunity, hom);
    const double load_penalty = std::pow(1.0 - params.mut_cost, static_cast<double>(load));
    return (1.0 - immunity) * load_penalty;
}

namespace {

class Simulation {
public:
    Simulation(const SimParams& params, std::uint64_t seed)
        : p_(params), rng_(make_engine(seed, "sim")), hosts_(static_cast<std::size_t>(params.population_size)) {
        const double weeks = static_cast<double>(p_.fixed.end_day) / p_.fixed.print_step;
        weekly_.reserve(static_cast<std::size_t>(weeks) + 1);
        types_.push_back({0, 0.0, std::nullopt, 0});
        strain_of(0, 0, std::nullopt);

        const auto n = static_cast<std::int64_t>(hosts_.size());
        for (auto& h : hosts_)
            if (uniform(rng_) < p_.fixed.initial_prior_immune) h.immune_history.push_back(0.0);

        auto initial = static_cast<std::int64_t>(std::llround(p_.initial_i_prop * static_cast<double>(n)));
        initial = std::clamp<std::int64_t>(initial, 1, n);
        std::vector<std::size_t> order(hosts_.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        for (std::int64_t k = 0; k < initial; ++k) {
            auto j = uniform_int<std::size_t>(rng_, static_cast<std::size_t>(k), order.size() - 1);
            std::swap(order[static_cast<std::size_t>(k)], order[j]);
            infect(order[static_cast<std::size_t>(k)], 0, /*count_case=*/false);
        }
        slot_.assign(hosts_.size(), -1);
        for (std::size_t i = 0; i < infected_.size(); ++i) slot_[infected_[i]] = static_cast<std::int64_t>(i);
        uninfected_ = n - static_cast<std::int64_t>(infected_.size());
        external_rate_ = p_.fixed.external_migration * static_cast<double>(n) / 1e7;
    }

    SimOutput run(std::chrono::duration<double> budget, const CensusObserver& observer) {
        const auto start = std::chrono::steady_clock::now();
        SimOutput out;
        out.status = SimStatus::completed;
        const int step = p_.fixed.print_step;
        int day = 0;
        for (; day < p_.fixed.end_day; ++day) {
            if (std::chrono::steady_clock::now() - start > budget) {
                out.status = SimStatus::wall_time_exceeded;
                break;
            }
            step_day(day);
            if (observer)
                observer({day, static_cast<std::int64_t>(hosts_.size()), uninfected_,
                          static_cast<std::int64_t>(infected_.size())});
            if ((day + 1) % step == 0) flush_week();
            if (infected_.empty() && external_rate_ == 0.0) {
                out.status = SimStatus::extinct;
                ++day;
                break;
            }
        }
        if (out.status != SimStatus::completed && day % step != 0) flush_week();
        out.days_simulated = day;
        out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        build_series(out);
        out.antigenic_types = types_.size();
        out.strains = strains_.size();
        return out;
    }

private:
    void step_day(int day) {
        current_day_ = day;
        const double season = p_.fixed.deme_baseline +
                              p_.deme_amplitude * std::cos(2.0 * std::numbers::pi *
                                                           (day / 365.0 - p_.fixed.deme_offset));
        const double beta_t = std::max(0.0, p_.beta * season);

        demography();

        // Contacts come from hosts infected before today; new infections are appended behind them.
        const std::size_t prior = infected_.size();
        const std::int64_t contacts = poisson(beta_t * static_cast<double>(prior));
        for (std::int64_t c = 0; c < contacts; ++c) {
            const std::size_t src = infected_[uniform_int<std::size_t>(rng_, 0, prior - 1)];
            challenge(hosts_[src].strain, /*mutate=*/true);
        }
        const std::int64_t imports = poisson(beta_t * external_rate_);
        for (std::int64_t c = 0; c < imports; ++c) {
            const std::int32_t strain =
                infected_.empty() ? 0 : hosts_[infected_[uniform_int<std::size_t>(rng_, 0, infected_.size() - 1)]].strain;
            challenge(strain, /*mutate=*/false);
        }

        // Recoveries among hosts infected before today.
        const double p_rec = 1.0 - std::exp(-p_.nu);
        const std::int64_t recoveries =
            prior == 0 ? 0 : std::binomial_distribution<std::int64_t>(static_cast<std::int64_t>(prior), p_rec)(rng_);
        std::vector<std::size_t> chosen;
        chosen.reserve(static_cast<std::size_t>(recoveries));
        for (std::int64_t k = 0; k < recoveries; ++k) {
            const auto pos = uniform_int<std::size_t>(rng_, static_cast<std::size_t>(k), prior - 1);
            swap_slots(static_cast<std::size_t>(k), pos);
            chosen.push_back(infected_[static_cast<std::size_t>(k)]);
        }
        for (std::size_t host : chosen) recover(host);
    }

    void demography() {
        const auto n = static_cast<std::int64_t>(hosts_.size());
        const std::int64_t deaths = std::binomial_distribution<std::int64_t>(n, p_.fixed.death_rate)(rng_);
        if (p_.fixed.swap_demography) {
            // Each death is paired with a birth into the same slot, so N is constant.
            for (std::int64_t k = 0; k < deaths; ++k) {
                const auto idx = uniform_int<std::size_t>(rng_, 0, hosts_.size() - 1);
                if (hosts_[idx].infected()) remove_infected(idx);
                hosts_[idx] = Host{};
            }
        } else {
            throw std::logic_error("only swap demography is supported");
        }
    }

    void challenge(std::int32_t strain_id, bool mutate) {
        const auto target = uniform_int<std::size_t>(rng_, 0, hosts_.size() - 1);
        Host& h = hosts_[target];
        if (h.infected()) return;
        const Strain& s = strains_[static_cast<std::size_t>(strain_id)];
        const double risk = infection_risk(h.immune_history, s.antigenic_position, s.deleterious_load, p_);
        if (uniform(rng_) >= risk) return;
        const std::int32_t next = mutate ? mutated(strain_id) : strain_id;
        infect(target, next, /*count_case=*/true);
        slot_[target] = static_cast<std::int64_t>(infected_.size() - 1);
        --uninfected_;
    }

    std::int32_t mutated(std::int32_t strain_id) {
        const Strain parent = strains_[static_cast<std::size_t>(strain_id)];
        std::int32_t load = parent.deleterious_load;
        load += static_cast<std::int32_t>(poisson(p_.lambda_deleterious));
        load -= static_cast<std::int32_t>(poisson(p_.fixed.epsilon * p_.epsilon_mut));
        load = std::max(load, 0);

        std::int32_t type = parent.antigenic_type;
        const std::int64_t hits = poisson(p_.lambda_antigenic);
        if (hits > 0) {
            const double shape = p_.fixed.antigenic_gamma_shape;
            std::gamma_distribution<double> size_dist(shape, p_.mean_antigenic_size / shape);
            for (std::int64_t k = 0; k < hits; ++k) {
                const double size = size_dist(rng_);
                const double sign = uniform(rng_) < 0.5 ? -1.0 : 1.0;
                if (size < p_.fixed.threshold_antigenic_size) continue;
                const double pos = types_[static_cast<std::size_t>(type)].position + sign * size;
                const auto id = static_cast<std::int32_t>(types_.size());
                types_.push_back({id, pos, type, current_day_});
                type = id;
            }
        }
        if (type == parent.antigenic_type && load == parent.deleterious_load) return strain_id;
        return strain_of(type, load, strain_id);
    }

    std::int32_t strain_of(std::int32_t type, std::int32_t load, std::optional<std::int32_t> parent) {
        const std::uint64_t key = (static_cast<std::uint64_t>(type) << 32) | static_cast<std::uint32_t>(load);
        auto it = strain_index_.find(key);
        if (it != strain_index_.end()) return it->second;
        const auto id = static_cast<std::int32_t>(strains_.size());
        strains_.push_back({id, type, types_[static_cast<std::size_t>(type)].position, load, parent});
        strain_index_.emplace(key, id);
        return id;
    }

    void infect(std::size_t host, std::int32_t strain, bool count_case) {
        hosts_[host].strain = strain;
        infected_.push_back(host);
        if (count_case) {
            const auto type = static_cast<std::size_t>(strains_[static_cast<std::size_t>(strain)].antigenic_type);
            if (week_counts_.size() <= type) week_counts_.resize(types_.size(), 0);
            ++week_counts_[type];
        }
    }

    void recover(std::size_t host) {
        Host& h = hosts_[host];
        const double pos = strains_[static_cast<std::size_t>(h.strain)].antigenic_position;
        if (std::find(h.immune_history.begin(), h.immune_history.end(), pos) == h.immune_history.end())
            h.immune_history.push_back(pos);
        remove_infected(host);
    }

    void remove_infected(std::size_t host) {
        const auto s = static_cast<std::size_t>(slot_[host]);
        swap_slots(s, infected_.size() - 1);
        infected_.pop_back();
        slot_[host] = -1;
        hosts_[host].strain = -1;
        ++uninfected_;
    }

    void swap_slots(std::size_t a, std::size_t b) {
        if (a == b) return;
        std::swap(infected_[a], infected_[b]);
        slot_[infected_[a]] = static_cast<std::int64_t>(a);
        slot_[infected_[b]] = static_cast<std::int64_t>(b);
    }

    void flush_week() {
        std::vector<std::pair<std::int32_t, std::int64_t>> row;
        for (std::size_t t = 0; t < week_counts_.size(); ++t)
            if (week_counts_[t] > 0) row.emplace_back(static_cast<std::int32_t>(t), week_counts_[t]);
        weekly_.push_back(std::move(row));
        std::fill(week_counts_.begin(), week_counts_.end(), 0);
    }

    void build_series(SimOutput& out) const {
        const std::size_t weeks = weekly_.size();
        out.tc.kind = SeriesKind::tc;
        out.tc.values.assign(weeks, 0.0);
        std::vector<std::vector<double>> per_type(types_.size());
        for (std::size_t w = 0; w < weeks; ++w) {
            for (const auto& [type, count] : weekly_[w]) {
                auto& v = per_type[static_cast<std::size_t>(type)];
                if (v.empty()) v.assign(weeks, 0.0);
                v[w] += static_cast<double>(count);
                out.tc.values[w] += static_cast<double>(count);
            }
        }
        for (std::size_t t = 0; t < per_type.size(); ++t) {
            if (per_type[t].empty()) continue;
            SurveillanceSeries s;
            s.kind = SeriesKind::vac;
            s.variant_id = static_cast<std::int64_t>(t);
            s.values = std::move(per_type[t]);
            out.vacs.push_back(std::move(s));
        }
    }

    std::int64_t poisson(double mean) {
        if (!(mean > 0.0)) return 0;
        return std::poisson_distribution<std::int64_t>(mean)(rng_);
    }

    const SimParams& p_;
    Engine rng_;
    std::vector<Host> hosts_;
    std::vector<std::size_t> infected_;
    std::vector<std::int64_t> slot_;
    std::int64_t uninfected_ = 0;
    double external_rate_ = 0.0;
    int current_day_ = 0;

    std::vector<AntigenicType> types_;
    std::vector<Strain> strains_;
    std::unordered_map<std::uint64_t, std::int32_t> strain_index_;

    std::vector<std::int64_t> week_counts_;
    std::vector<std::vector<std::pair<std::int32_t, std::int64_t>>> weekly_;
};

}  // namespace

SimOutput run_sim(const SimParams& params, std::uint64_t seed, std::chrono::duration<double> wall_budget,
                  const CensusObserver& observer) {
    params.validate();
    if (!(wall_budget.count() > 0.0)) throw std::invalid_argument("run_sim: wall budget must be > 0");
    Simulation sim(params, seed);
    SimOutput out = sim.run(wall_budget, observer);
    out.seed = seed;
    return out;
}

}  // namespace synthcast::sim
