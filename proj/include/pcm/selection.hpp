#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace pcm {

/// Independent WP/LS package choices: prosumer i picks WP with
/// probability q_i.
class SelectionModel {
public:
    /// Throws ParameterError if any probability is outside [0, 1].
    explicit SelectionModel(std::vector<double> probs);

    std::size_t size() const { return probs_.size(); }
    const std::vector<double>& probs() const { return probs_; }

private:
    std::vector<double> probs_;
};

/// One realized selection. Bit i of the mask is set when prosumer i + 1
/// took the WP package.
class Scenario {
public:
    Scenario(std::size_t size, std::uint64_t wp_mask);

    /// Builds from one-based prosumer ids; throws InputError on ids
    /// outside 1..size.
    static Scenario from_wp_set(std::size_t size, const std::vector<int>& wp_ids);

    std::size_t size() const { return size_; }
    std::uint64_t mask() const { return mask_; }
    /// |wp_set|, the number of WP prosumers.
    int wp_count() const;
    /// Zero-based index test.
    bool is_wp(std::size_t i) const { return (mask_ >> i) & 1u; }
    /// One-based ids of the WP prosumers, ascending.
    std::vector<int> wp_set() const;
    /// One-based ids of the LS prosumers, ascending.
    std::vector<int> ls_set() const;
    /// Package letters, prosumer 1 first, e.g. "WLLW".
    std::string label() const;

    friend bool operator==(const Scenario&, const Scenario&) = default;

private:
    std::size_t size_;
    std::uint64_t mask_;
};

/// Q(n) for n = 0..N by convolving the Bernoulli choices, O(N^2).
std::vector<double> weights(const SelectionModel& model);

/// prod_{i in wp} q_i * prod_{j not in wp} (1 - q_j).
double scenario_prob(const SelectionModel& model, const Scenario& s);

inline constexpr std::size_t kDefaultScenarioCap = 20;

/// All 2^N scenarios in binary counting order (prosumer 1 least
/// significant). Throws ResourceError if n exceeds cap.
std::vector<Scenario> enumerate_scenarios(std::size_t n, std::size_t cap = kDefaultScenarioCap);

}  // namespace pcm
