#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "safecoal/detector.hpp"
#include "safecoal/speclang.hpp"

namespace safecoal::cli {

/// Exit codes shared by every subcommand.
enum Exit : int {
    kOk = 0,         // success, safe_certified, ok_so_far, equivalent, closed
    kViolation = 1,  // violation, not equivalent, not closed
    kSpecError = 2,  // usage, IO or specification errors
    kUnknown = 3,    // budget exhausted
};

/// A constraint loaded from a DSL spec, an Eilenberg machine or a detector
/// table, compiled to a detector with a start state.
struct LoadedConstraint {
    std::string name;
    std::string kind;  // "spec", "machine" or "detector"
    RootedDetector rooted;
    bool kernel_changed = false;
};

LoadedConstraint load_constraint(std::string_view source, std::string name);

/// `alphabet: ...` header followed by one word per line.
struct WordSetFile {
    Alphabet alphabet;
    WordSet words;
};
WordSetFile read_word_set(std::string_view source);

/// Entry point behind the `safecoal` binary; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace safecoal::cli
