#include "safecoal/sequences.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "safecoal/error.hpp"

namespace safecoal {

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
    if (symbols_.size() < 2)
        throw std::invalid_argument("an alphabet needs at least two symbols");
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        if (symbols_[i].empty())
            throw std::invalid_argument("empty alphabet symbol");
        for (std::size_t j = 0; j < i; ++j)
            if (symbols_[i] == symbols_[j])
                throw std::invalid_argument("duplicate alphabet symbol '" + symbols_[i] + "'");
    }
}

Alphabet Alphabet::letters(std::size_t n) {
    if (n > 26)
        throw std::invalid_argument("at most 26 letter symbols");
    std::vector<std::string> symbols;
    for (std::size_t i = 0; i < n; ++i)
        symbols.emplace_back(1, static_cast<char>('a' + i));
    return Alphabet(std::move(symbols));
}

std::optional<Symbol> Alphabet::find(std::string_view token) const {
    auto it = std::find(symbols_.begin(), symbols_.end(), token);
    if (it == symbols_.end())
        return std::nullopt;
    return static_cast<Symbol>(it - symbols_.begin());
}

Symbol Alphabet::at(std::string_view token) const {
    if (auto n = find(token))
        return *n;
    throw std::invalid_argument("unknown symbol '" + std::string(token) + "'");
}

void require_same_alphabet(const Alphabet& a, const Alphabet& b) {
    if (!(a == b))
        throw AlphabetMismatch("components are defined over different alphabets");
}

Lasso::Lasso(Word prefix, Word period) : prefix_(std::move(prefix)), period_(std::move(period)) {
    if (period_.empty())
        throw std::invalid_argument("lasso period must be nonempty");
}

Symbol Lasso::at(std::size_t k) const {
    if (k < prefix_.size())
        return prefix_[k];
    return period_[(k - prefix_.size()) % period_.size()];
}

Lasso Lasso::normalized() const {
    // primitive root of the period
    const std::size_t n = period_.size();
    std::size_t root = n;
    for (std::size_t p = 1; p < n; ++p) {
        if (n % p != 0)
            continue;
        bool repeats = true;
        for (std::size_t i = p; i < n && repeats; ++i)
            repeats = period_[i] == period_[i - p];
        if (repeats) {
            root = p;
            break;
        }
    }
    Word prefix = prefix_;
    Word period(period_.begin(), period_.begin() + static_cast<std::ptrdiff_t>(root));
    while (!prefix.empty() && prefix.back() == period.back()) {
        prefix.pop_back();
        std::rotate(period.begin(), period.end() - 1, period.end());
    }
    return Lasso(std::move(prefix), std::move(period));
}

bool same_stream(const Lasso& s, const Lasso& t) { return s.normalized() == t.normalized(); }

Word concat(const Word& u, const Word& t) {
    Word out;
    out.reserve(u.size() + t.size());
    out.insert(out.end(), u.begin(), u.end());
    out.insert(out.end(), t.begin(), t.end());
    return out;
}

Lasso concat(const Word& u, const Lasso& t) { return Lasso(concat(u, t.prefix()), t.period()); }

Word slice_from(const Word& s, std::size_t m) {
    if (m >= s.size())
        return {};
    return Word(s.begin() + static_cast<std::ptrdiff_t>(m), s.end());
}

Lasso slice_from(const Lasso& s, std::size_t m) {
    if (m < s.prefix().size())
        return Lasso(slice_from(s.prefix(), m), s.period());
    Word period = s.period();
    const std::size_t shift = (m - s.prefix().size()) % period.size();
    std::rotate(period.begin(), period.begin() + static_cast<std::ptrdiff_t>(shift), period.end());
    return Lasso({}, std::move(period));
}

Word slice_range(const Word& s, std::size_t m, std::size_t l) {
    l = std::min(l, s.size());
    if (m >= l)
        return {};
    return Word(s.begin() + static_cast<std::ptrdiff_t>(m), s.begin() + static_cast<std::ptrdiff_t>(l));
}

Word slice_range(const Lasso& s, std::size_t m, std::size_t l) {
    Word out;
    for (std::size_t k = m; k < l; ++k)
        out.push_back(s.at(k));
    return out;
}

bool is_proper_prefix(const Word& p, const Word& w) {
    return p.size() < w.size() && std::equal(p.begin(), p.end(), w.begin());
}

WordSet derivative_set(Symbol n, const WordSet& words) {
    WordSet out;
    for (const Word& w : words)
        if (!w.empty() && w.front() == n)
            out.emplace(w.begin() + 1, w.end());
    return out;
}

namespace {

/// Returns a member that is a proper prefix of another member, if any.
std::optional<std::pair<Word, Word>> prefix_witness(const WordSet& words) {
    for (const Word& w : words) {
        Word p;
        for (std::size_t k = 0; k < w.size(); ++k) {
            if (words.count(p))
                return std::pair{p, w};
            p.push_back(w[k]);
        }
    }
    return std::nullopt;
}

}  // namespace

bool is_prefix_free(const WordSet& words) { return !prefix_witness(words).has_value(); }

void require_violation_set(const WordSet& words) {
    if (words.count(Word{}))
        throw EpsilonViolation("violation sets must not contain the empty word");
    if (auto w = prefix_witness(words))
        throw NotPrefixFree("word set is not prefix-free", w->first, w->second);
}

Decomposition decompose(const WordSet& words, std::size_t alphabet_size) {
    require_violation_set(words);
    Decomposition parts;
    for (Symbol n = 0; n < alphabet_size; ++n) {
        if (words.count(Word{n}))
            parts.immediate.insert(n);
        else
            parts.residuals.emplace(n, derivative_set(n, words));
    }
    return parts;
}

WordSet reassemble(const Decomposition& parts) {
    WordSet out;
    for (Symbol n : parts.immediate)
        out.insert(Word{n});
    for (const auto& [n, rest] : parts.residuals)
        for (const Word& u : rest)
            out.insert(concat(Word{n}, u));
    return out;
}

Word parse_word(const Alphabet& alphabet, std::string_view text) {
    std::istringstream in{std::string(text)};
    Word out;
    std::string token;
    while (in >> token)
        out.push_back(alphabet.at(token));
    return out;
}

Lasso parse_lasso(const Alphabet& alphabet, std::string_view text) {
    const auto semi = text.find(';');
    if (semi == std::string_view::npos)
        throw std::invalid_argument("lasso literal needs the form 'prefix ; period'");
    if (text.find(';', semi + 1) != std::string_view::npos)
        throw std::invalid_argument("lasso literal has more than one ';'");
    return Lasso(parse_word(alphabet, text.substr(0, semi)), parse_word(alphabet, text.substr(semi + 1)));
}

std::string format_word(const Alphabet& alphabet, const Word& word) {
    std::string out;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (i)
            out += ' ';
        out += alphabet[word[i]];
    }
    return out;
}

std::string format_lasso(const Alphabet& alphabet, const Lasso& lasso) {
    std::string out = format_word(alphabet, lasso.prefix());
    out += out.empty() ? "; " : " ; ";
    out += format_word(alphabet, lasso.period());
    return out;
}

}  // namespace safecoal
