#include "svcq/qsim/grover.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace svcq {

GroverSim::GroverSim(std::uint64_t space, std::uint64_t marked) : space_(space), count_(marked) {
    if (space == 0) throw std::invalid_argument("grover: empty search space");
    if (marked > space) throw std::invalid_argument("grover: marked count exceeds space");
    const double amp = 1.0 / std::sqrt(static_cast<double>(space));
    marked_ = amp;
    unmarked_ = amp;
}

void GroverSim::iterate() {
    // oracle: phase flip on the marked class
    marked_ = -marked_;
    // diffusion: reflect about the mean amplitude
    const double k = static_cast<double>(count_);
    const double u = static_cast<double>(space_ - count_);
    const double mean = (k * marked_ + u * unmarked_) / static_cast<double>(space_);
    marked_ = 2.0 * mean - marked_;
    unmarked_ = 2.0 * mean - unmarked_;
    // fp drift guard; the rotation is norm-preserving analytically
    const double norm = std::sqrt(k * marked_ * marked_ + u * unmarked_ * unmarked_);
    if (norm > 0.0) {
        marked_ /= norm;
        unmarked_ /= norm;
    }
}

double GroverSim::marked_norm() const {
    return std::sqrt(static_cast<double>(count_)) * std::abs(marked_);
}

double GroverSim::marked_probability() const {
    return std::min(1.0, static_cast<double>(count_) * marked_ * marked_);
}

namespace {

constexpr double kPi = 3.14159265358979323846;

long optimal_iterations(double space, double marked) {
    if (marked <= 0.0) return 0;
    return static_cast<long>(std::floor(kPi / 4.0 * std::sqrt(space / marked)));
}

double analytic_success(std::uint64_t space, std::uint64_t marked, long r) {
    if (marked == 0) return 0.0;
    const double theta =
        std::asin(std::sqrt(static_cast<double>(marked) / static_cast<double>(space)));
    const double s = std::sin((2.0 * static_cast<double>(r) + 1.0) * theta);
    return s * s;
}

// Measures the two-class state: returns a marked index with probability
// k a_m^2, otherwise an unmarked one, uniform within the class. The
// marked list is sorted by construction.
std::uint64_t measure(const GroverSim& sim, const std::vector<std::uint64_t>& marked,
                      std::uint64_t space, SplitMix64& rng) {
    const bool hit = !marked.empty() && rng.uniform01() < sim.marked_probability();
    if (hit) return marked[rng.below(marked.size())];
    if (marked.size() == space) return marked[rng.below(marked.size())];
    // uniform over the complement by rejection
    while (true) {
        const std::uint64_t idx = rng.below(space);
        if (!std::binary_search(marked.begin(), marked.end(), idx)) return idx;
    }
}

}  // namespace

GroverOutcome grover_search(const std::function<bool(std::uint64_t)>& oracle, int n_qubits,
                            std::optional<std::uint64_t> marked_count_hint, std::uint64_t seed) {
    if (n_qubits < 1 || n_qubits > 20)
        throw std::invalid_argument("grover_search handles 1..20 qubits");

    const std::uint64_t space = std::uint64_t{1} << n_qubits;
    // classical preprocessing of the emulation, not counted as queries
    std::vector<std::uint64_t> marked;
    for (std::uint64_t i = 0; i < space; ++i)
        if (oracle(i)) marked.push_back(i);
    const std::uint64_t k_true = marked.size();

    SplitMix64 rng(seed);
    GroverOutcome out;
    const double cap = 3.0 * std::sqrt(static_cast<double>(space));
    // bounds the zero-iteration degenerate loops alongside the main cap
    const long verification_cap = 2 * n_qubits + 24;
    long verifications = 0;
    long last_r = 0;

    const auto finish = [&](std::optional<std::uint64_t> found) {
        out.found_index = found;
        out.oracle_queries = out.iterations + verifications;
        out.success_probability = analytic_success(space, k_true, last_r);
        return out;
    };

    if (marked_count_hint) {
        const std::uint64_t k = *marked_count_hint;
        if (k < 1 || k > space) throw std::invalid_argument("marked-count hint out of range");
        const long r = optimal_iterations(static_cast<double>(space), static_cast<double>(k));
        while (true) {
            GroverSim sim(space, k_true);
            for (long i = 0; i < r; ++i) sim.iterate();
            out.iterations += r;
            last_r = r;
            const std::uint64_t idx = measure(sim, marked, space, rng);
            ++verifications;
            if (oracle(idx)) return finish(idx);
            if (static_cast<double>(out.iterations) >= cap || verifications >= verification_cap)
                return finish(std::nullopt);
        }
    }

    // unknown marked count: doubling schedule
    std::uint64_t m = 1;
    const std::uint64_t m_max =
        static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(space))));
    while (true) {
        const long j = static_cast<long>(rng.below(m));
        GroverSim sim(space, k_true);
        for (long i = 0; i < j; ++i) sim.iterate();
        out.iterations += j;
        last_r = j;
        const std::uint64_t idx = measure(sim, marked, space, rng);
        ++verifications;
        if (oracle(idx)) return finish(idx);
        if (static_cast<double>(out.iterations) >= cap || verifications >= verification_cap)
            return finish(std::nullopt);
        m = std::min(2 * m, m_max);
    }
}

double grover_query_model(std::uint64_t space, std::uint64_t marked, bool marked_known) {
    if (marked < 1 || marked > space)
        throw std::invalid_argument("grover_query_model: marked count out of range");
    const double ratio = static_cast<double>(space) / static_cast<double>(marked);
    if (marked_known)
        return std::floor(kPi / 4.0 * std::sqrt(ratio)) + 1.0;
    return 2.25 * std::sqrt(ratio);
}

void grover_no_solution_charge(std::uint64_t space, long& iterations, long& verifications) {
    const double root = std::sqrt(static_cast<double>(space));
    iterations += static_cast<long>(std::ceil(3.0 * root));
    // rounds to saturate the doubling schedule plus the capped tail
    verifications += static_cast<long>(std::ceil(std::log2(std::max(2.0, root)))) + 6;
}

}  // namespace svcq
