#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "safecoal/bisim.hpp"
#include "safecoal/families.hpp"
#include "safecoal/join.hpp"
#include "safecoal/text.hpp"

namespace safecoal::cli {

namespace {

using json = nlohmann::ordered_json;

/// Usage or input problem that maps to exit code 2.
class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw UsageError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string stem(const std::string& path) {
    const auto slash = path.find_last_of('/');
    std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
    const auto dot = base.find_last_of('.');
    return dot == std::string::npos || dot == 0 ? base : base.substr(0, dot);
}

enum class Format { text, json };

Format parse_format(const std::string& value, Format fallback) {
    if (value.empty())
        return fallback;
    if (value == "json")
        return Format::json;
    if (value == "text")
        return Format::text;
    throw UsageError("--format must be 'json' or 'text'");
}

std::vector<std::string> tokens_of(const Alphabet& alphabet, const Word& w) {
    std::vector<std::string> out;
    for (Symbol n : w)
        out.push_back(alphabet[n]);
    return out;
}

std::string format_set(const Alphabet& alphabet, const WordSet& words) {
    std::string out = "{";
    bool first = true;
    for (const Word& w : words) {
        out += first ? " " : ", ";
        out += format_word(alphabet, w);
        first = false;
    }
    return out + (first ? "}" : " }");
}

/// Serialized monitor verdict.
struct VerdictReport {
    std::string verdict;  // violation | safe_certified | ok_so_far | unknown
    std::optional<std::size_t> prefix_len;
    std::optional<std::size_t> ana_value;
    std::optional<Word> bad_prefix;
    std::optional<std::size_t> steps_consumed;

    int exit_code() const {
        if (verdict == "violation")
            return kViolation;
        if (verdict == "unknown")
            return kUnknown;
        return kOk;
    }
};

VerdictReport report_of(const MonitorVerdict& v) {
    if (const auto* bad = std::get_if<Violation>(&v))
        return {"violation", bad->prefix_len, bad->ana_value, bad->bad_prefix, std::nullopt};
    if (const auto* unknown = std::get_if<Unknown>(&v))
        return {"unknown", std::nullopt, std::nullopt, std::nullopt, unknown->steps_consumed};
    return {"safe_certified", std::nullopt, std::nullopt, std::nullopt, std::nullopt};
}

void print_report(const VerdictReport& r, const Alphabet& alphabet, Format format, std::ostream& out) {
    if (format == Format::json) {
        auto opt = [](const std::optional<std::size_t>& v) { return v ? json(*v) : json(nullptr); };
        json j;
        j["verdict"] = r.verdict;
        j["prefix_len"] = opt(r.prefix_len);
        j["ana_value"] = opt(r.ana_value);
        j["bad_prefix"] = r.bad_prefix ? json(tokens_of(alphabet, *r.bad_prefix)) : json(nullptr);
        j["steps_consumed"] = opt(r.steps_consumed);
        out << j.dump() << '\n';
        return;
    }
    out << r.verdict;
    if (r.prefix_len)
        out << " prefix_len=" << *r.prefix_len << " ana_value=" << *r.ana_value << " bad_prefix=\""
            << format_word(alphabet, *r.bad_prefix) << '"';
    if (r.steps_consumed)
        out << " steps_consumed=" << *r.steps_consumed;
    out << '\n';
}

/// Feeds whitespace-separated tokens from `in` one at a time, stopping at the
/// first terminal verdict.
VerdictReport monitor_trace(const RootedDetector& rooted, std::istream& in, std::optional<std::size_t> budget) {
    const Alphabet& alphabet = rooted.detector.alphabet();
    OnlineMonitor monitor(DetectorHandle(std::make_shared<const FiniteDetector>(rooted.detector), rooted.initial));
    Word consumed;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        for (const auto& token : text::split_ws(text::strip_comment(line))) {
            const auto n = alphabet.find(token);
            if (!n)
                throw UsageError("trace line " + std::to_string(line_number) + ": unknown symbol '" + token + "'");
            if (budget && monitor.position() == *budget)
                return {"unknown", std::nullopt, std::nullopt, std::nullopt, *budget};
            consumed.push_back(*n);
            const auto feed = monitor.feed(*n);
            if (feed.status == OnlineMonitor::Status::violation)
                return {"violation", feed.position, feed.position - 1, consumed, std::nullopt};
            if (feed.status == OnlineMonitor::Status::unknown)
                return {"unknown", std::nullopt, std::nullopt, std::nullopt, feed.position};
        }
    }
    return {"ok_so_far", std::nullopt, std::nullopt, std::nullopt, monitor.position()};
}

/// NotPrefixFree with the witness pair spelled out in alphabet tokens.
[[noreturn]] void rethrow_with_witness(const NotPrefixFree& e, const Alphabet& alphabet) {
    throw NotPrefixFree(std::string(e.what()) + ": \"" + format_word(alphabet, e.shorter) + "\" is a prefix of \"" +
                            format_word(alphabet, e.longer) + "\"",
                        e.shorter, e.longer);
}

int cmd_check(const std::string& path, Format format, std::ostream& out) {
    const LoadedConstraint c = load_constraint(read_file(path), stem(path));
    const Alphabet& alphabet = c.rooted.detector.alphabet();
    if (format == Format::json) {
        json j;
        j["name"] = c.name;
        j["kind"] = c.kind;
        j["alphabet"] = alphabet.symbols();
        j["states"] = c.rooted.detector.size();
        j["kernel_changed"] = c.kernel_changed;
        out << j.dump() << '\n';
        return kOk;
    }
    out << "name: " << c.name << '\n'
        << "kind: " << c.kind << '\n'
        << "alphabet: " << format_word(alphabet, [&] {
               Word all;
               for (Symbol n = 0; n < alphabet.size(); ++n)
                   all.push_back(n);
               return all;
           }()) << '\n'
        << "states: " << c.rooted.detector.size() << '\n'
        << "kernel: " << (c.kernel_changed ? "changed (violations reduced to minimal bad prefixes)" : "unchanged")
        << '\n';
    return kOk;
}

int cmd_words(const std::string& path, long depth, Format format, std::ostream& out) {
    if (depth <= 0)
        throw UsageError("--depth must be at least 1");
    const LoadedConstraint c = load_constraint(read_file(path), stem(path));
    const WordSet words =
        minimal_violation_words(c.rooted.detector, c.rooted.initial, static_cast<std::size_t>(depth));
    const Alphabet& alphabet = c.rooted.detector.alphabet();
    if (format == Format::json) {
        json list = json::array();
        for (const Word& w : words)
            list.push_back(tokens_of(alphabet, w));
        out << list.dump() << '\n';
        return kOk;
    }
    for (const Word& w : words)
        out << format_word(alphabet, w) << '\n';
    return kOk;
}

int cmd_monitor(const std::string& path, const std::string& trace, const std::string& lasso,
                std::optional<std::size_t> budget, Format format, std::istream& in, std::ostream& out) {
    if (trace.empty() == lasso.empty())
        throw UsageError("give exactly one of --trace or --lasso");
    const LoadedConstraint c = load_constraint(read_file(path), stem(path));
    const Alphabet& alphabet = c.rooted.detector.alphabet();
    VerdictReport report;
    if (!lasso.empty()) {
        Lasso s = [&] {
            try {
                return parse_lasso(alphabet, lasso);
            } catch (const std::invalid_argument& e) {
                throw UsageError(std::string("--lasso: ") + e.what());
            }
        }();
        report = report_of(monitor_lasso(c.rooted.detector, c.rooted.initial, s, budget));
    } else if (trace == "-") {
        report = monitor_trace(c.rooted, in, budget);
    } else {
        std::ifstream file(trace);
        if (!file)
            throw UsageError("cannot open '" + trace + "'");
        report = monitor_trace(c.rooted, file, budget);
    }
    print_report(report, alphabet, format, out);
    return report.exit_code();
}

int cmd_equiv(const std::string& first, const std::string& second, Format format, std::ostream& out) {
    const LoadedConstraint a = load_constraint(read_file(first), stem(first));
    const LoadedConstraint b = load_constraint(read_file(second), stem(second));
    if (!(a.rooted.detector.alphabet() == b.rooted.detector.alphabet()))
        throw UsageError("the two constraints declare different alphabets");
    const bool same = bisimilar(a.rooted.detector, a.rooted.initial, b.rooted.detector, b.rooted.initial);
    std::optional<Word> witness;
    if (!same)
        witness = shortest_difference(anamorphism_regular(a.rooted.detector, a.rooted.initial).dfa(),
                                      anamorphism_regular(b.rooted.detector, b.rooted.initial).dfa());
    const Alphabet& alphabet = a.rooted.detector.alphabet();
    if (format == Format::json) {
        json j;
        j["equivalent"] = same;
        j["witness"] = witness ? json(tokens_of(alphabet, *witness)) : json(nullptr);
        out << j.dump() << '\n';
    } else if (same) {
        out << "equivalent\n";
    } else {
        const bool in_first = anamorphism_regular(a.rooted.detector, a.rooted.initial).contains(*witness);
        out << "not equivalent\nwitness: " << format_word(alphabet, *witness) << " (violation of "
            << (in_first ? a.name : b.name) << " only)\n";
    }
    return same ? kOk : kViolation;
}

int cmd_family(const std::vector<std::string>& paths, Format format, std::ostream& out) {
    if (paths.empty())
        throw UsageError("family needs at least one set file");
    std::optional<Alphabet> alphabet;
    std::vector<WordSet> family;
    for (const auto& path : paths) {
        WordSetFile f = [&] {
            try {
                return read_word_set(read_file(path));
            } catch (const std::invalid_argument& e) {
                throw UsageError(path + ": " + e.what());
            }
        }();
        if (alphabet && !(*alphabet == f.alphabet))
            throw UsageError(path + ": alphabet differs from the first set file");
        alphabet = f.alphabet;
        family.push_back(std::move(f.words));
    }
    const FamilyCheck check = [&] {
        try {
            return check_universal_family(family, alphabet->size());
        } catch (const NotPrefixFree& e) {
            rethrow_with_witness(e, *alphabet);
        }
    }();
    if (format == Format::json) {
        json j;
        j["closed"] = check.closed;
        if (check.closed) {
            j["witness"] = nullptr;
        } else {
            j["witness"] = {{"file", paths[check.member]}, {"symbol", (*alphabet)[check.symbol]}};
        }
        out << j.dump() << '\n';
    } else if (check.closed) {
        out << "closed (" << family.size() << " members)\n";
    } else {
        out << "not closed\nwitness: " << paths[check.member] << " on symbol " << (*alphabet)[check.symbol]
            << ": derivative " << format_set(*alphabet, derivative_set(check.symbol, family[check.member]))
            << " is not in the family\n";
    }
    return check.closed ? kOk : kViolation;
}

int cmd_export(const std::string& path, std::ostream& out) {
    const LoadedConstraint c = load_constraint(read_file(path), stem(path));
    out << "# start state: " << c.rooted.detector.name(c.rooted.initial) << '\n' << write_detector(c.rooted.detector);
    return kOk;
}

}  // namespace

LoadedConstraint load_constraint(std::string_view source, std::string name) {
    // machines have an `initial` header, detector tables start with `states`,
    // anything else is the DSL
    const auto lines = text::content_lines(source);
    std::string_view rest;
    bool machine = false;
    for (const auto& line : lines)
        if (text::header(line.content, "initial", rest))
            machine = true;
    if (machine) {
        const EilenbergMachine m = read_machine(source);
        const RootedDetector raw = [&] {
            try {
                return machine_to_detector(m);
            } catch (const NotPrefixFree& e) {
                rethrow_with_witness(e, m.alphabet());
            }
        }();
        return {std::move(name), "machine", minimize(raw.detector, raw.initial), false};
    }
    if (!lines.empty() && text::header(lines.front().content, "states", rest)) {
        FiniteDetector d = read_detector(source);
        return {std::move(name), "detector", {std::move(d), 0}, false};
    }
    const ConstraintSpec spec = parse_spec(source, name);
    return {std::move(name), "spec", compile(spec), kernel_changes_language(spec)};
}

WordSetFile read_word_set(std::string_view source) {
    const auto lines = text::content_lines(source);
    std::string_view rest;
    if (lines.empty() || !text::header(lines.front().content, "alphabet", rest))
        throw std::invalid_argument("word set file must start with an 'alphabet:' header");
    WordSetFile f{Alphabet(text::split_ws(rest)), {}};
    for (std::size_t i = 1; i < lines.size(); ++i)
        f.words.insert(parse_word(f.alphabet, lines[i].content));
    return f;
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"safecoal: safety constraints as detectors"};
    app.require_subcommand(1);
    std::string format_flag;
    app.add_option("--format", format_flag, "Output format: json or text");

    std::string spec_path, second_path, trace, lasso;
    long depth = 4;
    std::optional<std::size_t> budget;
    std::vector<std::string> set_paths;

    auto* check = app.add_subcommand("check", "Parse and compile a constraint, report its detector");
    check->add_option("spec", spec_path, "Constraint file")->required();

    auto* words = app.add_subcommand("words", "List minimal violation words up to a depth");
    words->add_option("spec", spec_path, "Constraint file")->required();
    words->add_option("--depth", depth, "Maximum word length (at least 1)");

    auto* monitor = app.add_subcommand("monitor", "Monitor a finite trace or a lasso stream");
    monitor->add_option("spec", spec_path, "Constraint file")->required();
    monitor->add_option("--trace", trace, "Trace file, or - for stdin");
    monitor->add_option("--lasso", lasso, "Lasso literal 'prefix ; period'");
    monitor->add_option("--budget", budget, "Maximum number of monitoring steps");

    auto* equiv = app.add_subcommand("equiv", "Decide whether two constraints are equivalent");
    equiv->add_option("first", spec_path, "First constraint file")->required();
    equiv->add_option("second", second_path, "Second constraint file")->required();

    auto* family = app.add_subcommand("family", "Check closure of explicit violation sets under derivatives");
    family->add_option("sets", set_paths, "Word set files")->required();

    auto* exporter = app.add_subcommand("export", "Print the compiled detector as a table");
    exporter->add_option("spec", spec_path, "Constraint file")->required();

    for (auto* sub : {check, words, monitor, equiv, family, exporter})
        sub->add_option("--format", format_flag, "Output format: json or text");

    std::vector<const char*> argv{"safecoal"};
    for (const auto& a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kSpecError;
    }

    try {
        if (*check)
            return cmd_check(spec_path, parse_format(format_flag, Format::text), out);
        if (*words)
            return cmd_words(spec_path, depth, parse_format(format_flag, Format::text), out);
        if (*monitor)
            return cmd_monitor(spec_path, trace, lasso, budget, parse_format(format_flag, Format::json), in, out);
        if (*equiv)
            return cmd_equiv(spec_path, second_path, parse_format(format_flag, Format::text), out);
        if (*family)
            return cmd_family(set_paths, parse_format(format_flag, Format::text), out);
        if (*exporter)
            return cmd_export(spec_path, out);
    } catch (const SpecError& e) {
        err << "error: " << spec_path << ":" << e.what() << '\n';
        return kSpecError;
    } catch (const EpsilonViolation& e) {
        err << "error: EpsilonViolation: " << e.what() << '\n';
        return kSpecError;
    } catch (const NotPrefixFree& e) {
        err << "error: NotPrefixFree: " << e.what() << '\n';
        return kSpecError;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kSpecError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kSpecError;
    }
    return kSpecError;
}

}  // namespace safecoal::cli
