#include "posent/corpus.hpp"
#include "posent/errors.hpp"

#include <cstdio>
#include <utility>

namespace posent {

namespace {

// Decodes one UTF-8 codepoint at `i`, advancing `i`. Returns false on malformed input.
bool decode_utf8(std::string_view s, std::size_t& i, char32_t& cp) {
    const auto byte = [&](std::size_t k) { return static_cast<unsigned char>(s[k]); };
    unsigned char b0 = byte(i);
    if (b0 < 0x80) {
        cp = b0;
        i += 1;
        return true;
    }
    int len;
    char32_t v;
    if ((b0 & 0xE0) == 0xC0) { len = 2; v = b0 & 0x1F; }
    else if ((b0 & 0xF0) == 0xE0) { len = 3; v = b0 & 0x0F; }
    else if ((b0 & 0xF8) == 0xF0) { len = 4; v = b0 & 0x07; }
    else return false;
    if (i + len > s.size()) return false;
    for (int k = 1; k < len; ++k) {
        unsigned char b = byte(i + k);
        if ((b & 0xC0) != 0x80) return false;
        v = (v << 6) | (b & 0x3F);
    }
    // reject overlong encodings, surrogates and out-of-range values
    if (len == 2 && v < 0x80) return false;
    if (len == 3 && v < 0x800) return false;
    if (len == 4 && v < 0x10000) return false;
    if (v >= 0xD800 && v <= 0xDFFF) return false;
    if (v > 0x10FFFF) return false;
    cp = v;
    i += len;
    return true;
}

void validate_utf8(std::string_view text) {
    std::size_t i = 0;
    char32_t cp;
    while (i < text.size()) {
        std::size_t at = i;
        if (!decode_utf8(text, i, cp))
            throw data_error("invalid UTF-8 at byte offset " + std::to_string(at));
    }
}

bool is_ascii_alnum(char32_t c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

bool is_apostrophe(char32_t c) { return c == 0x27 || c == 0x2019; }

bool is_hyphen(char32_t c) { return c == '-' || c == 0x2010 || c == 0x2011; }

// Letters and digits for token purposes. Non-ASCII: Latin-1 punctuation
// (0x80..0xBF, 0xD7, 0xF7) and the general/supplemental/CJK punctuation
// blocks separate; the rest counts as letters.
bool is_letter_or_digit(char32_t c) {
    if (c < 0x80) return is_ascii_alnum(c);
    if (c <= 0xBF || c == 0xD7 || c == 0xF7) return false;
    if (c >= 0x2000 && c <= 0x206F) return false;
    if (c >= 0x2E00 && c <= 0x2E7F) return false;
    if (c >= 0x3000 && c <= 0x303F) return false;
    if (c >= 0xFE30 && c <= 0xFE4F) return false;
    if (c >= 0xFF01 && c <= 0xFF0F) return false;
    return true;
}

bool is_word_char(char32_t c) { return is_letter_or_digit(c) || is_apostrophe(c); }

// Lowercases ASCII, Latin-1, Latin Extended-A, Greek and basic Cyrillic;
// leaves everything else unchanged.
char32_t to_lower(char32_t c) {
    if (c >= 'A' && c <= 'Z') return c + 32;
    if (c >= 0xC0 && c <= 0xDE && c != 0xD7) return c + 32;
    if (c >= 0x100 && c <= 0x137) return (c % 2 == 0) ? c + 1 : c;
    if (c >= 0x139 && c <= 0x148) return (c % 2 == 1) ? c + 1 : c;
    if (c >= 0x14A && c <= 0x177) return (c % 2 == 0) ? c + 1 : c;
    if (c == 0x178) return 0xFF;
    if (c >= 0x179 && c <= 0x17E) return (c % 2 == 1) ? c + 1 : c;
    if (c >= 0x391 && c <= 0x3A9 && c != 0x3A2) return c + 32;
    if (c >= 0x410 && c <= 0x42F) return c + 32;
    if (c >= 0x400 && c <= 0x40F) return c + 80;
    return c;
}

void append_utf8(std::string& out, char32_t c) {
    if (c < 0x80) {
        out.push_back(static_cast<char>(c));
    } else if (c < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (c >> 6)));
        out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    } else if (c < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (c >> 12)));
        out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (c >> 18)));
        out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    }
}

bool is_blank(std::string_view s) {
    for (char ch : s)
        if (ch != ' ' && ch != '\t' && ch != '\r' && ch != '\n' && ch != '\f' && ch != '\v')
            return false;
    return true;
}

std::string_view trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    const auto ws = [](char ch) {
        return ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n' || ch == '\f' || ch == '\v';
    };
    while (b < e && ws(s[b])) ++b;
    while (e > b && ws(s[e - 1])) --e;
    return s.substr(b, e - b);
}

std::uint64_t fnv1a(std::uint64_t h, const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 0x100000001B3ull;
    }
    return h;
}

std::uint64_t sentence_hash(const Sentence& s) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (const Token& t : s.tokens) {
        h = fnv1a(h, t.norm.data(), t.norm.size());
        unsigned char sep = 0x1F;
        h = fnv1a(h, &sep, 1);
    }
    return h;
}

} // namespace

std::vector<std::string_view> segment_sentences(std::string_view text, InputFormat format) {
    validate_utf8(text);
    std::vector<std::string_view> spans;
    if (format == InputFormat::Lines) {
        std::size_t pos = 0;
        while (pos <= text.size()) {
            std::size_t nl = text.find('\n', pos);
            std::string_view line =
                (nl == std::string_view::npos) ? text.substr(pos) : text.substr(pos, nl - pos);
            if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
            if (!is_blank(line)) spans.push_back(trim(line));
            if (nl == std::string_view::npos) break;
            pos = nl + 1;
        }
        return spans;
    }
    // Plain: break after . ! ? when followed by whitespace (or end of input).
    std::size_t start = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c != '.' && c != '!' && c != '?') continue;
        bool at_end = (i + 1 == text.size());
        char next = at_end ? ' ' : text[i + 1];
        if (at_end || next == ' ' || next == '\t' || next == '\r' || next == '\n' ||
            next == '\f' || next == '\v') {
            std::string_view span = trim(text.substr(start, i + 1 - start));
            if (!is_blank(span)) spans.push_back(span);
            start = i + 1;
        }
    }
    if (start < text.size()) {
        std::string_view tail = trim(text.substr(start));
        if (!is_blank(tail)) spans.push_back(tail);
    }
    return spans;
}

std::vector<Token> tokenize(std::string_view span, const TokenizeConfig& config) {
    // Decode once, then scan codepoints; hyphens need one char of lookahead.
    std::vector<char32_t> cps;
    cps.reserve(span.size());
    std::size_t i = 0;
    char32_t cp;
    while (i < span.size()) {
        if (!decode_utf8(span, i, cp))
            throw data_error("invalid UTF-8 at byte offset " + std::to_string(i));
        cps.push_back(cp);
    }

    std::vector<Token> tokens;
    std::string surface, norm;
    const auto flush = [&] {
        if (!surface.empty()) {
            tokens.push_back(Token{std::move(surface), std::move(norm)});
            surface.clear();
            norm.clear();
        }
    };
    for (std::size_t k = 0; k < cps.size(); ++k) {
        char32_t c = cps[k];
        bool take = is_word_char(c);
        if (!take && is_hyphen(c)) {
            bool prev_ok = !surface.empty();
            bool next_ok = k + 1 < cps.size() && is_word_char(cps[k + 1]);
            take = prev_ok && next_ok;
        }
        if (take) {
            append_utf8(surface, c);
            append_utf8(norm, config.lowercase ? to_lower(c) : c);
        } else {
            flush();
        }
    }
    flush();
    return tokens;
}

LengthBinner::LengthBinner(int min_len, int max_len, bool dedup)
    : min_len_(min_len), max_len_(max_len), dedup_(dedup) {
    if (min_len < 1 || min_len > max_len)
        throw config_error("length range requires 1 <= min_len <= max_len, got [" +
                           std::to_string(min_len) + ", " + std::to_string(max_len) + "]");
}

void LengthBinner::add(Sentence sentence) {
    ++result_.sentences_seen;
    int len = sentence.length();
    result_.tokens_seen += static_cast<std::uint64_t>(len);
    if (len < min_len_ || len > max_len_) {
        ++result_.sentences_out_of_range;
        return;
    }
    bool fresh = seen_.insert(sentence_hash(sentence)).second;
    if (fresh) ++result_.distinct_in_range;
    if (dedup_ && !fresh) {
        ++result_.duplicates_dropped;
        return;
    }
    auto [it, inserted] = result_.bins.try_emplace(len);
    if (inserted) {
        it->second.length = len;
        it->second.dedup_applied = dedup_;
    }
    it->second.sentences.push_back(std::move(sentence));
    ++result_.sentences_kept;
}

BinningResult LengthBinner::take() {
    seen_.clear();
    return std::move(result_);
}

BinningResult bin_by_length(std::vector<Sentence> sentences, int min_len, int max_len, bool dedup) {
    LengthBinner binner(min_len, max_len, dedup);
    for (Sentence& s : sentences) binner.add(std::move(s));
    return binner.take();
}

std::string read_file(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw io_error("cannot open '" + path + "' for reading");
    std::string out;
    char buf[1 << 16];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, f)) > 0) out.append(buf, n);
    bool bad = std::ferror(f);
    std::fclose(f);
    if (bad) throw io_error("read error on '" + path + "'");
    return out;
}

} // namespace posent
