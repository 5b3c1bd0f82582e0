#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "svcq/rng.hpp"

namespace svcq {

struct GroverOutcome {
    std::optional<std::uint64_t> found_index;
    long iterations = 0;       // Grover iterations executed, one oracle query each
    long oracle_queries = 0;   // iterations plus verification measurements
    double success_probability = 0.0;  // sin^2((2r+1) theta) for the final run
};

// Exact amplitude evolution of a Grover search with a classical-predicate
// oracle. Such an oracle keeps the state uniform on the marked set and
// uniform on its complement, so the full 2^n state vector is represented
// losslessly by the two class amplitudes; every amplitude and the
// measurement distribution match a dense simulation to machine precision.
class GroverSim {
public:
    GroverSim(std::uint64_t space, std::uint64_t marked);

    void iterate();                       // oracle phase flip + diffusion
    double marked_amplitude() const { return marked_; }
    double unmarked_amplitude() const { return unmarked_; }
    // norm of the projection onto the marked subspace, sin((2r+1) theta)
    double marked_norm() const;
    // probability that a measurement lands in the marked set
    double marked_probability() const;

private:
    std::uint64_t space_;
    std::uint64_t count_;
    double marked_ = 0.0;
    double unmarked_ = 0.0;
};

// Grover search over {0 .. 2^n - 1}. With a marked-count hint, runs the
// optimal floor(pi/4 sqrt(N/k)) iterations, measures, verifies against
// the oracle and retries on failure; without a hint, runs the
// doubling schedule (j uniform in [0, m), m doubling up to sqrt(N)).
// Either way the total iteration budget is capped at 3 sqrt(N); an
// exhausted budget reports no marked element. n is limited to 20.
GroverOutcome grover_search(const std::function<bool(std::uint64_t)>& oracle, int n_qubits,
                            std::optional<std::uint64_t> marked_count_hint, std::uint64_t seed);

// Analytic query-count model for spaces too large to simulate:
// floor(pi/4 sqrt(M/k)) + 1 when k is known (iterations plus one
// verification), (9/4) sqrt(M/k) when only the schedule bound applies.
double grover_query_model(std::uint64_t space, std::uint64_t marked, bool marked_known = true);

// Deterministic charge for an exhausted unknown-count schedule on an
// empty marked set: the 3 sqrt(N) iteration cap plus one verification per
// schedule round.
void grover_no_solution_charge(std::uint64_t space, long& iterations, long& verifications);

}  // namespace svcq
