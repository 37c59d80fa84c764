#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "hazelkit/builtin_data.hpp"
#include "hazelkit/errors.hpp"

namespace hazelkit {

// ---------------------------------------------------------------------
// Minimal UTF-8 handling, English-oriented: ASCII plus Latin-1 Supplement
// and Latin Extended-A letters. Everything else is treated as punctuation.
// ---------------------------------------------------------------------
namespace unicode {

struct Decoded {
    char32_t cp;
    int len;
};

inline Decoded decode(std::string_view s, std::size_t i) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    if (b0 < 0x80) return {b0, 1};
    auto cont = [&](std::size_t k) {
        return k < s.size() && (static_cast<unsigned char>(s[k]) & 0xC0) == 0x80;
    };
    if ((b0 & 0xE0) == 0xC0 && cont(i + 1)) {
        const char32_t cp = (char32_t(b0 & 0x1F) << 6) |
                            char32_t(static_cast<unsigned char>(s[i + 1]) & 0x3F);
        return {cp, 2};
    }
    if ((b0 & 0xF0) == 0xE0 && cont(i + 1) && cont(i + 2)) {
        const char32_t cp = (char32_t(b0 & 0x0F) << 12) |
                            (char32_t(static_cast<unsigned char>(s[i + 1]) & 0x3F) << 6) |
                            char32_t(static_cast<unsigned char>(s[i + 2]) & 0x3F);
        return {cp, 3};
    }
    if ((b0 & 0xF8) == 0xF0 && cont(i + 1) && cont(i + 2) && cont(i + 3)) {
        const char32_t cp = (char32_t(b0 & 0x07) << 18) |
                            (char32_t(static_cast<unsigned char>(s[i + 1]) & 0x3F) << 12) |
                            (char32_t(static_cast<unsigned char>(s[i + 2]) & 0x3F) << 6) |
                            char32_t(static_cast<unsigned char>(s[i + 3]) & 0x3F);
        return {cp, 4};
    }
    return {b0, 1};  // invalid sequence: pass the byte through
}

inline void encode(char32_t cp, std::string& out) {
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
        out += static_cast<char>(0xE0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
        out += static_cast<char>(0xF0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    }
}

inline bool is_digit(char32_t c) { return c >= '0' && c <= '9'; }

inline bool is_letter(char32_t c) {
    if ((c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z')) return true;
    if (c == 0x00D7 || c == 0x00F7) return false;  // multiplication/division signs
    return c >= 0x00C0 && c <= 0x024F;
}

inline bool is_upper(char32_t c) {
    return (c >= 'A' && c <= 'Z') || (c >= 0x00C0 && c <= 0x00DE && c != 0x00D7);
}

inline char32_t to_lower(char32_t c) {
    if (c >= 'A' && c <= 'Z') return c + 0x20;
    if (c >= 0x00C0 && c <= 0x00DE && c != 0x00D7) return c + 0x20;
    return c;
}

inline bool is_apostrophe(char32_t c) { return c == '\'' || c == 0x2019; }

inline bool is_word_hyphen(char32_t c) { return c == '-' || c == 0x2010 || c == 0x2011; }

inline bool is_space(char32_t c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v' ||
           c == 0x00A0;
}

}  // namespace unicode

// ---------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------

struct Word {
    std::string surface;     ///< token as it appeared in the text
    std::string normalized;  ///< lowercased, edge punctuation stripped, apostrophes canonical
    int syllables = 1;
    int characters = 1;      ///< letters and digits in `normalized`
    bool is_numeric = false;
};

struct Sentence {
    std::string text;  ///< trimmed sentence text
    int word_count = 0;
    int index = 0;  ///< ordinal position in the source text, 0-based
};

/// Familiar-word list used for difficult-word classification.
class Lexicon {
public:
    Lexicon() = default;

    static Lexicon from_text(std::string_view text, std::string source_label) {
        Lexicon lex;
        lex.source_label_ = std::move(source_label);
        std::size_t pos = 0;
        while (pos <= text.size()) {
            const std::size_t eol = text.find('\n', pos);
            std::string_view line =
                text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
            pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
            while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) {
                line.remove_suffix(1);
            }
            while (!line.empty() && line.front() == ' ') line.remove_prefix(1);
            if (line.empty() || line.front() == '#') continue;
            lex.entries_.emplace(line);
        }
        return lex;
    }

    static Lexicon from_file(const std::string& path, std::string source_label = "") {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw IoFailure("cannot read lexicon file: " + path);
        std::ostringstream buf;
        buf << in.rdbuf();
        return from_text(buf.str(), source_label.empty() ? path : std::move(source_label));
    }

    static Lexicon from_words(const std::vector<std::string>& words, std::string source_label) {
        Lexicon lex;
        lex.source_label_ = std::move(source_label);
        lex.entries_.insert(words.begin(), words.end());
        return lex;
    }

    /// Word list compiled into the binary from data/lexicon/familiar_words.txt.
    static const Lexicon& builtin() {
        static const Lexicon lex = from_text(builtin::kLexiconText, "builtin familiar word list");
        return lex;
    }

    bool contains(std::string_view lower_word) const {
        return entries_.count(std::string(lower_word)) > 0;
    }

    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    const std::string& source_label() const { return source_label_; }

private:
    std::unordered_set<std::string> entries_;
    std::string source_label_;
};

/// The surface statistics every readability formula consumes.
struct TextMetrics {
    int sentence_count = 0;
    int word_count = 0;
    int syllable_count = 0;
    int character_count = 0;
    int difficult_word_count = 0;
    double asl = 0.0;  ///< words per sentence
    double asw = 0.0;  ///< syllables per word
    double acw = 0.0;  ///< characters per word
    double pdw = 0.0;  ///< percentage of difficult words, 0-100
};

// ---------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------

/// Syllables of a normalized (lowercase) word: maximal vowel groups
/// (a e i o u y), minus a terminal silent "e" unless the word ends in a
/// consonant + "le", floored at 1.
inline int count_syllables(std::string_view normalized) {
    std::vector<char32_t> cps;
    cps.reserve(normalized.size());
    for (std::size_t i = 0; i < normalized.size();) {
        const auto d = unicode::decode(normalized, i);
        cps.push_back(d.cp);
        i += static_cast<std::size_t>(d.len);
    }
    auto vowel = [](char32_t c) {
        return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
    };
    auto consonant = [&](char32_t c) { return unicode::is_letter(c) && !vowel(c); };

    int groups = 0;
    bool in_group = false;
    for (const char32_t c : cps) {
        const bool v = vowel(c);
        if (v && !in_group) ++groups;
        in_group = v;
    }
    const std::size_t n = cps.size();
    if (n >= 2 && cps[n - 1] == 'e' && consonant(cps[n - 2])) {
        const bool ends_consonant_le = n >= 3 && cps[n - 2] == 'l' && consonant(cps[n - 3]);
        if (!ends_consonant_le) --groups;
    }
    return std::max(groups, 1);
}

inline int count_syllables(const Word& word) { return count_syllables(word.normalized); }

/// Maximal runs of letters, digits, apostrophes, and hyphens; edge
/// characters that are not letters or digits are stripped. Hyphenated
/// tokens stay whole and apostrophes stay inside the token.
inline std::vector<Word> tokenize_words(std::string_view text) {
    std::vector<Word> words;
    std::size_t i = 0;
    auto is_word_cp = [](char32_t c) {
        return unicode::is_letter(c) || unicode::is_digit(c) || unicode::is_apostrophe(c) ||
               unicode::is_word_hyphen(c);
    };
    while (i < text.size()) {
        auto d = unicode::decode(text, i);
        if (!is_word_cp(d.cp)) {
            i += static_cast<std::size_t>(d.len);
            continue;
        }
        // collect the run
        std::vector<std::pair<char32_t, std::size_t>> run;  // (codepoint, byte offset)
        while (i < text.size()) {
            d = unicode::decode(text, i);
            if (!is_word_cp(d.cp)) break;
            run.emplace_back(d.cp, i);
            i += static_cast<std::size_t>(d.len);
        }
        const std::size_t run_end = i;
        // strip edges down to letters/digits
        std::size_t a = 0;
        std::size_t b = run.size();
        auto core = [](char32_t c) { return unicode::is_letter(c) || unicode::is_digit(c); };
        while (a < b && !core(run[a].first)) ++a;
        while (b > a && !core(run[b - 1].first)) --b;
        if (a == b) continue;

        const std::size_t sur_begin = run[a].second;
        const std::size_t sur_end = b < run.size() ? run[b].second : run_end;
        Word w;
        w.surface = std::string(text.substr(sur_begin, sur_end - sur_begin));

        bool has_letter = false;
        int letters_digits = 0;
        for (std::size_t k = a; k < b; ++k) {
            char32_t c = run[k].first;
            if (unicode::is_letter(c)) {
                has_letter = true;
                ++letters_digits;
            } else if (unicode::is_digit(c)) {
                ++letters_digits;
            }
            // canonicalize so downstream matching sees ASCII separators
            if (unicode::is_apostrophe(c)) c = '\'';
            if (unicode::is_word_hyphen(c)) c = '-';
            unicode::encode(unicode::to_lower(c), w.normalized);
        }
        w.characters = letters_digits;
        w.is_numeric = !has_letter;
        w.syllables = w.is_numeric ? 1 : count_syllables(w.normalized);
        words.push_back(std::move(w));
    }
    return words;
}

namespace detail {

inline const std::unordered_set<std::string>& abbreviations() {
    static const std::unordered_set<std::string> abbrevs = {
        "mr", "mrs", "dr", "st", "e.g", "i.e", "etc", "no", "fig", "vol"};
    return abbrevs;
}

inline bool has_letter(std::string_view text) {
    for (std::size_t i = 0; i < text.size();) {
        const auto d = unicode::decode(text, i);
        if (unicode::is_letter(d.cp)) return true;
        i += static_cast<std::size_t>(d.len);
    }
    return false;
}

inline std::string_view trim(std::string_view s) {
    while (!s.empty()) {
        const auto d = unicode::decode(s, 0);
        if (!unicode::is_space(d.cp)) break;
        s.remove_prefix(static_cast<std::size_t>(d.len));
    }
    // trailing trim: ASCII whitespace plus UTF-8 NBSP (C2 A0)
    while (!s.empty()) {
        const unsigned char back = static_cast<unsigned char>(s.back());
        if (back == ' ' || back == '\t' || back == '\n' || back == '\r' || back == '\f' ||
            back == '\v') {
            s.remove_suffix(1);
        } else if (back == 0xA0 && s.size() >= 2 &&
                   static_cast<unsigned char>(s[s.size() - 2]) == 0xC2) {
            s.remove_suffix(2);
        } else {
            break;
        }
    }
    return s;
}

// The word immediately before a period, scanned back over letters and
// dots, lowercased. "(e.g." yields "e.g", "etc," stops at the comma.
inline std::string token_before(std::string_view text, std::size_t period_pos) {
    std::size_t b = period_pos;
    while (b > 0) {
        const char c = text[b - 1];
        const bool ascii_letter = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z');
        if (!ascii_letter && c != '.') break;
        --b;
    }
    std::string token;
    for (std::size_t k = b; k < period_pos; ++k) {
        char c = text[k];
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c + 0x20);
        token += c;
    }
    while (!token.empty() && token.front() == '.') token.erase(token.begin());
    return token;
}

}  // namespace detail

/// Rule-based sentence splitter: a `.`, `!`, or `?` ends a sentence when
/// followed by whitespace and an uppercase letter, or at end of input.
/// A fixed abbreviation list and a digit.digit guard suppress false splits.
inline std::vector<Sentence> split_sentences(std::string_view text) {
    if (!detail::has_letter(text)) throw EmptyText();

    std::vector<Sentence> sentences;
    auto flush = [&](std::size_t from, std::size_t to) {
        const std::string_view slice = detail::trim(text.substr(from, to - from));
        if (slice.empty()) return;
        Sentence s;
        s.text = std::string(slice);
        s.word_count = static_cast<int>(tokenize_words(slice).size());
        s.index = static_cast<int>(sentences.size());
        sentences.push_back(std::move(s));
    };

    std::size_t start = 0;
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        const char c = text[i];
        if (c == '.' || c == '!' || c == '?') {
            std::size_t k = i + 1;
            while (k < n) {
                const auto d = unicode::decode(text, k);
                if (!unicode::is_space(d.cp)) break;
                k += static_cast<std::size_t>(d.len);
            }
            const bool ws_follows = k > i + 1;
            bool boundary = false;
            if (ws_follows && k < n) {
                const auto next = unicode::decode(text, k);
                boundary = unicode::is_upper(next.cp);
            }
            if (boundary && c == '.') {
                // decimal numbers never split
                if (i > 0 && i + 1 < n && unicode::is_digit(text[i - 1]) &&
                    unicode::is_digit(text[i + 1])) {
                    boundary = false;
                }
                if (boundary &&
                    detail::abbreviations().count(detail::token_before(text, i)) > 0) {
                    boundary = false;
                }
            }
            if (boundary) {
                flush(start, i + 1);
                start = k;
                i = k;
                continue;
            }
        }
        ++i;
    }
    flush(start, n);
    if (sentences.empty()) throw EmptyText();
    return sentences;
}

/// Dale-Chall style familiarity test. A word is familiar when its
/// normalized form or a suffix-stripped stem (-s, -es, -ed, -ing, -er,
/// -est, with consonant undoubling and final-e restoration) is in the
/// lexicon, or when it is capitalized away from the start of a sentence.
inline bool classify_difficult(const Word& word, const Lexicon& lexicon,
                               bool sentence_initial = false) {
    const std::string& norm = word.normalized;
    if (lexicon.contains(norm)) return false;

    if (!sentence_initial && !word.surface.empty()) {
        const auto first = unicode::decode(word.surface, 0);
        if (unicode::is_upper(first.cp)) return false;  // proper-noun allowance
    }

    static const char* kSuffixes[] = {"s", "es", "ed", "ing", "er", "est"};
    for (const char* suffix : kSuffixes) {
        const std::size_t len = std::char_traits<char>::length(suffix);
        if (norm.size() <= len || norm.compare(norm.size() - len, len, suffix) != 0) continue;
        const std::string base = norm.substr(0, norm.size() - len);
        if (base.empty()) continue;
        if (lexicon.contains(base)) return false;
        if (lexicon.contains(base + "e")) return false;  // make -> making
        if (base.size() >= 2 && base[base.size() - 1] == base[base.size() - 2] &&
            lexicon.contains(base.substr(0, base.size() - 1))) {
            return false;  // run -> running
        }
    }
    return true;
}

/// Full composition: sentences, words, syllables, characters, difficult
/// words, and the derived ratios.
inline TextMetrics compute_metrics(std::string_view text, const Lexicon& lexicon) {
    const std::vector<Sentence> sentences = split_sentences(text);
    TextMetrics m;
    m.sentence_count = static_cast<int>(sentences.size());
    for (const Sentence& sentence : sentences) {
        const std::vector<Word> words = tokenize_words(sentence.text);
        for (std::size_t w = 0; w < words.size(); ++w) {
            ++m.word_count;
            m.syllable_count += words[w].syllables;
            m.character_count += words[w].characters;
            if (classify_difficult(words[w], lexicon, /*sentence_initial=*/w == 0)) {
                ++m.difficult_word_count;
            }
        }
    }
    if (m.word_count == 0) throw EmptyText("text contains no words");
    m.asl = static_cast<double>(m.word_count) / m.sentence_count;
    m.asw = static_cast<double>(m.syllable_count) / m.word_count;
    m.acw = static_cast<double>(m.character_count) / m.word_count;
    m.pdw = 100.0 * m.difficult_word_count / m.word_count;
    return m;
}

}  // namespace hazelkit
