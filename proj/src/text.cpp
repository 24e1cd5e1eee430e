#include "corpuslens/text.hpp"

#include <cctype>

namespace corpuslens::text {

std::string to_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return out;
}

namespace {

// Decodes one UTF-8 codepoint starting at i; advances i past it. Invalid
// sequences are consumed one byte at a time and reported as U+FFFD.
char32_t decode_utf8(std::string_view s, std::size_t& i) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    if (b0 < 0x80) {
        ++i;
        return b0;
    }
    int len = 0;
    char32_t cp = 0;
    if ((b0 & 0xE0) == 0xC0) {
        len = 2;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4;
        cp = b0 & 0x07;
    } else {
        ++i;
        return 0xFFFD;
    }
    if (i + len > s.size()) {
        ++i;
        return 0xFFFD;
    }
    for (int k = 1; k < len; ++k) {
        const auto bk = static_cast<unsigned char>(s[i + k]);
        if ((bk & 0xC0) != 0x80) {
            ++i;
            return 0xFFFD;
        }
        cp = (cp << 6) | (bk & 0x3F);
    }
    i += len;
    return cp;
}

bool in_range(char32_t cp, char32_t lo, char32_t hi) { return cp >= lo && cp <= hi; }

}  // namespace

bool is_word_codepoint(char32_t cp) {
    if (cp < 0x80) {
        return (cp >= '0' && cp <= '9') || (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z');
    }
    // Latin-1 punctuation/symbols and the common Unicode punctuation blocks.
    if (in_range(cp, 0x80, 0xBF)) return false;
    if (cp == 0xD7 || cp == 0xF7) return false;            // multiplication/division signs
    if (in_range(cp, 0x2000, 0x206F)) return false;         // general punctuation (incl. ellipsis, quotes)
    if (in_range(cp, 0x20A0, 0x20CF)) return false;         // currency symbols
    if (in_range(cp, 0x2100, 0x2BFF)) return false;         // letterlike, arrows, math, misc symbols
    if (in_range(cp, 0x3000, 0x303F)) return false;         // CJK punctuation
    if (in_range(cp, 0xFE30, 0xFE4F)) return false;         // compat forms
    if (in_range(cp, 0xFF01, 0xFF0F)) return false;         // fullwidth punctuation
    if (in_range(cp, 0xFF1A, 0xFF20)) return false;
    if (in_range(cp, 0xFF3B, 0xFF40)) return false;
    if (in_range(cp, 0xFF5B, 0xFF65)) return false;
    if (in_range(cp, 0x1F000, 0x1FFFF)) return false;       // emoji & symbol planes
    return true;
}

std::vector<std::string> tokenize(std::string_view s) {
    std::vector<std::string> tokens;
    std::string current;
    std::size_t i = 0;
    while (i < s.size()) {
        const std::size_t start = i;
        const char32_t cp = decode_utf8(s, i);
        if (is_word_codepoint(cp)) {
            for (std::size_t k = start; k < i; ++k) {
                char c = s[k];
                if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
                current.push_back(c);
            }
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

std::string normalize_joined(std::string_view s) {
    const auto tokens = tokenize(s);
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i > 0) out.push_back(' ');
        out += tokens[i];
    }
    return out;
}

bool contains_phrase(const std::vector<std::string>& tokens,
                     const std::vector<std::string>& phrase_tokens) {
    if (phrase_tokens.empty() || phrase_tokens.size() > tokens.size()) return false;
    const std::size_t m = phrase_tokens.size();
    for (std::size_t i = 0; i + m <= tokens.size(); ++i) {
        bool match = true;
        for (std::size_t j = 0; j < m; ++j) {
            if (tokens[i + j] != phrase_tokens[j]) {
                match = false;
                break;
            }
        }
        if (match) return true;
    }
    return false;
}

std::vector<std::string> split_whitespace(std::string_view s) {
    std::vector<std::string> out;
    std::string current;
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c)) != 0) {
            if (!current.empty()) {
                out.push_back(std::move(current));
                current.clear();
            }
        } else {
            current.push_back(c);
        }
    }
    if (!current.empty()) out.push_back(std::move(current));
    return out;
}

std::size_t utf8_length(std::string_view s) {
    std::size_t n = 0;
    for (char c : s) {
        if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++n;
    }
    return n;
}

}  // namespace corpuslens::text
