#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "safecoal/sequences.hpp"
#include "safecoal/types.hpp"

namespace safecoal {

/// Result of one step of a system that may fault: either ↓ or a successor.
class Next {
  public:
    static constexpr Next fault() { return Next(kFault); }
    static constexpr Next to(State x) { return Next(x); }

    constexpr bool is_fault() const { return state_ == kFault; }
    constexpr State state() const { return state_; }

    constexpr bool operator==(const Next&) const = default;

  private:
    static constexpr State kFault = ~State{0};
    constexpr explicit Next(State x) : state_(x) {}
    State state_;
};

/// Finite system with termination: every state either faults or moves on.
class TSystem {
  public:
    explicit TSystem(std::vector<Next> step);

    std::size_t size() const { return step_.size(); }
    Next step(State x) const { return step_[x]; }
    const std::vector<Next>& table() const { return step_; }

  private:
    std::vector<Next> step_;
};

/// Point of the final T-coalgebra: a fault time k, or ∞.
class TerminationTime {
  public:
    static constexpr TerminationTime finite(std::size_t k) { return TerminationTime(k, true); }
    static constexpr TerminationTime infinite() { return TerminationTime(0, false); }

    constexpr bool is_finite() const { return finite_; }
    /// Only meaningful when is_finite().
    constexpr std::size_t value() const { return k_; }

    constexpr bool operator==(const TerminationTime&) const = default;

  private:
    constexpr TerminationTime(std::size_t k, bool finite) : k_(k), finite_(finite) {}
    std::size_t k_;
    bool finite_;
};

/// g⁽ᵏ⁾x for k ≥ 1: faults propagate, otherwise step again.
Next t_iterate(const TSystem& g, State x, std::size_t k);

/// min{k | g⁽ᵏ⁺¹⁾x = ↓}, or ∞ when the orbit of x closes a cycle first.
TerminationTime t_anamorphism(const TSystem& g, State x);

/// Finite system with output, given by its output and transition maps.
class SSystem {
  public:
    SSystem(Alphabet alphabet, std::vector<Symbol> out, std::vector<State> tr);

    const Alphabet& alphabet() const { return alphabet_; }
    std::size_t size() const { return out_.size(); }
    Symbol out(State x) const { return out_[x]; }
    State tr(State x) const { return tr_[x]; }

  private:
    Alphabet alphabet_;
    std::vector<Symbol> out_;
    std::vector<State> tr_;
};

/// The observed behaviour k ↦ out(trᵏ x), as a lasso.
Lasso s_anamorphism(const SSystem& sigma, State x);

struct RootedSSystem {
    SSystem system;
    State initial;
};

/// The system [s]: states are the distinct suffixes of s, out is head and
/// tr is shift.
RootedSSystem stream_system(const Alphabet& alphabet, const Lasso& s);

/// The positional system of a lasso: one state per position below
/// cycle_size(), without identifying equal suffixes.
RootedSSystem positional_system(const Alphabet& alphabet, const Lasso& s);

/// (out τ)∘f = out σ and (tr τ)∘f = f∘(tr σ).
bool check_s_morphism(std::span<const State> f, const SSystem& sigma, const SSystem& tau);

/// For every x, either g x = ↓ and h(f x) = ↓, or g x ≠ ↓ and f(g x) = h(f x).
bool check_t_morphism(std::span<const State> f, const TSystem& g, const TSystem& h);

}  // namespace safecoal
