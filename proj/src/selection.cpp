#include "pcm/selection.hpp"

#include "pcm/errors.hpp"

#include <bit>

namespace pcm {

SelectionModel::SelectionModel(std::vector<double> probs) : probs_(std::move(probs)) {
    for (std::size_t i = 0; i < probs_.size(); ++i) {
        const double q = probs_[i];
        if (!(q >= 0.0 && q <= 1.0))
            throw ParameterError("selection probability q_" + std::to_string(i + 1) +
                                 " = " + std::to_string(q) + " outside [0, 1]");
    }
}

Scenario::Scenario(std::size_t size, std::uint64_t wp_mask) : size_(size), mask_(wp_mask) {
    if (size > 63)
        throw ResourceError("scenario masks support at most 63 prosumers");
    if ((wp_mask >> size) != 0)
        throw InputError("scenario mask " + std::to_string(wp_mask) + " has bits beyond N = " +
                         std::to_string(size));
}

Scenario Scenario::from_wp_set(std::size_t size, const std::vector<int>& wp_ids) {
    std::uint64_t mask = 0;
    for (int id : wp_ids) {
        if (id < 1 || static_cast<std::size_t>(id) > size)
            throw InputError("prosumer id " + std::to_string(id) + " outside 1.." +
                             std::to_string(size));
        mask |= std::uint64_t{1} << (id - 1);
    }
    return Scenario(size, mask);
}

int Scenario::wp_count() const {
    return std::popcount(mask_);
}

std::vector<int> Scenario::wp_set() const {
    std::vector<int> ids;
    for (std::size_t i = 0; i < size_; ++i)
        if (is_wp(i))
            ids.push_back(static_cast<int>(i + 1));
    return ids;
}

std::vector<int> Scenario::ls_set() const {
    std::vector<int> ids;
    for (std::size_t i = 0; i < size_; ++i)
        if (!is_wp(i))
            ids.push_back(static_cast<int>(i + 1));
    return ids;
}

std::string Scenario::label() const {
    std::string s(size_, 'L');
    for (std::size_t i = 0; i < size_; ++i)
        if (is_wp(i))
            s[i] = 'W';
    return s;
}

std::vector<double> weights(const SelectionModel& model) {
    const std::size_t n = model.size();
    std::vector<double> q(n + 1, 0.0);
    q[0] = 1.0;
    // After processing k prosumers, q[j] is P(j of the first k chose WP).
    for (std::size_t k = 0; k < n; ++k) {
        const double p = model.probs()[k];
        for (std::size_t j = k + 1; j > 0; --j)
            q[j] = q[j] * (1.0 - p) + q[j - 1] * p;
        q[0] *= 1.0 - p;
    }
    return q;
}

double scenario_prob(const SelectionModel& model, const Scenario& s) {
    if (s.size() != model.size())
        throw InputError("scenario covers " + std::to_string(s.size()) + " prosumers, model has " +
                         std::to_string(model.size()));
    double p = 1.0;
    for (std::size_t i = 0; i < s.size(); ++i)
        p *= s.is_wp(i) ? model.probs()[i] : 1.0 - model.probs()[i];
    return p;
}

std::vector<Scenario> enumerate_scenarios(std::size_t n, std::size_t cap) {
    if (n > cap)
        throw ResourceError("enumerating 2^" + std::to_string(n) + " scenarios exceeds the cap N <= " +
                            std::to_string(cap));
    if (n > 62)
        throw ResourceError("scenario enumeration supports at most 62 prosumers");
    const std::uint64_t count = std::uint64_t{1} << n;
    std::vector<Scenario> out;
    out.reserve(count);
    for (std::uint64_t m = 0; m < count; ++m)
        out.emplace_back(n, m);
    return out;
}

}  // namespace pcm
