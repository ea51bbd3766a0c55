#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "safecoal/coalgebra.hpp"
#include "safecoal/detector.hpp"
#include "safecoal/final_detector.hpp"

namespace safecoal {

/// Join(σ, a): the system with termination on σ-states × detector-states
/// that faults when the detector faults on σ's output and otherwise moves
/// both components.
struct JoinSystem {
    TSystem system;
    std::size_t detector_size;

    State index(State sigma_state, State detector_state) const {
        return static_cast<State>(sigma_state * detector_size + detector_state);
    }
    std::pair<State, State> components(State pair) const {
        return {static_cast<State>(pair / detector_size), static_cast<State>(pair % detector_size)};
    }
};

/// Fully materialized product. Throws AlphabetMismatch.
JoinSystem join(const SSystem& sigma, const FiniteDetector& a);

/// Join(f, g) = f × g on the product indexing of join().
std::vector<State> join_map(std::span<const State> f, std::span<const State> g, std::size_t target_detector_size);

struct Violation {
    /// Length of the minimal faulting prefix, at least 1.
    std::size_t prefix_len;
    Word bad_prefix;
    /// Anamorphism value K of the joined system; always prefix_len - 1.
    std::size_t ana_value;

    bool operator==(const Violation&) const = default;
};

struct CertifiedSafe {
    bool operator==(const CertifiedSafe&) const = default;
};

struct Unknown {
    std::size_t steps_consumed;

    bool operator==(const Unknown&) const = default;
};

using MonitorVerdict = std::variant<Violation, CertifiedSafe, Unknown>;

/// Verdict of the detector a started at x on the stream s.
///
/// The pair (lasso position, detector state) ranges over a finite set, so a
/// repeated pair inside the period without a fault certifies safety. With
/// `max_steps`, gives up with Unknown after that many steps.
MonitorVerdict monitor_lasso(const FiniteDetector& a, State x, const Lasso& s,
                             std::optional<std::size_t> max_steps = std::nullopt);

/// The same verdict computed on the final detector started at the violation
/// language `p`. Only explicit and regular representations can certify
/// safety; the others throw std::invalid_argument.
MonitorVerdict monitor_lasso(const PrefixFreeSet& p, const Lasso& s);

/// s ∈ constr(a, x): the monitor never faults on s.
bool constr_member(const FiniteDetector& a, State x, const Lasso& s);

/// Verdict through a at x, and through the final detector at ⟨a⟩(x).
std::pair<MonitorVerdict, MonitorVerdict> transfer_to_universal(const FiniteDetector& a, State x, const Lasso& s);

/// Incremental monitor over a live feed of symbols.
class OnlineMonitor {
  public:
    enum class Status { ok, violation, unknown };

    struct Feed {
        Status status;
        /// Number of symbols fed so far, including this one.
        std::size_t position;
        /// Enumeration steps spent on this symbol (enumerated sets only).
        std::size_t work = 0;
    };

    explicit OnlineMonitor(DetectorHandle handle) : handle_(std::move(handle)) {}

    /// Throws std::logic_error once a violation or unknown has been reported.
    Feed feed(Symbol n);

    std::size_t position() const { return position_; }
    bool finished() const { return !handle_.has_value(); }

  private:
    std::optional<DetectorHandle> handle_;
    std::size_t position_ = 0;
};

inline OnlineMonitor monitor_online(DetectorHandle handle) { return OnlineMonitor(std::move(handle)); }

}  // namespace safecoal
