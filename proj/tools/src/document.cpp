#include "document.hpp"

#include "cfocus/error.hpp"

#include <cstdio>
#include <fstream>
#include <iterator>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

namespace cfocus::cli {

namespace {

constexpr int kMaxExponent = 1000;

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset) {
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k < offset && k < text.size(); ++k) {
        if (text[k] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

// Input iterator that counts how many characters the JSON lexer has pulled.
class CountingIterator {
public:
    using iterator_category = std::input_iterator_tag;
    using value_type = char;
    using difference_type = std::ptrdiff_t;
    using pointer = const char *;
    using reference = const char &;

    CountingIterator(const char *p, std::size_t *count)
      : p_(p)
      , count_(count) {}

    reference operator*() const { return *p_; }
    CountingIterator &operator++() {
        ++p_;
        ++*count_;
        return *this;
    }
    CountingIterator operator++(int) {
        CountingIterator old = *this;
        ++*this;
        return old;
    }
    bool operator==(const CountingIterator &o) const { return p_ == o.p_; }
    bool operator!=(const CountingIterator &o) const { return p_ != o.p_; }

private:
    const char *p_;
    std::size_t *count_;
};

// Start offset of every value, keyed by JSON pointer.  SAX events fire right
// after their token is scanned, so the start is recovered by scanning back.
class PositionIndex : public nlohmann::json_sax<nlohmann::json> {
public:
    PositionIndex(std::string_view text, const std::size_t *consumed)
      : text_(text)
      , consumed_(consumed) {}

    std::map<std::string, std::size_t> at;

    bool null() override { return scalar(word_start()); }
    bool boolean(bool) override { return scalar(word_start()); }
    bool number_integer(number_integer_t) override { return scalar(number_start()); }
    bool number_unsigned(number_unsigned_t) override { return scalar(number_start()); }
    bool number_float(number_float_t, const string_t &) override { return scalar(number_start()); }
    bool string(string_t &) override { return scalar(string_start()); }
    bool binary(binary_t &) override { return scalar(*consumed_); }

    bool start_object(std::size_t) override {
        at[pointer()] = *consumed_ - 1;
        stack_.push_back({false, 0, {}});
        return true;
    }
    bool key(string_t &k) override {
        stack_.back().key = k;
        return true;
    }
    bool end_object() override { return close(); }
    bool start_array(std::size_t) override {
        at[pointer()] = *consumed_ - 1;
        stack_.push_back({true, 0, {}});
        return true;
    }
    bool end_array() override { return close(); }
    bool parse_error(std::size_t, const std::string &, const nlohmann::detail::exception &) override { return false; }

private:
    struct Frame {
        bool array;
        std::size_t next;
        std::string key;
    };

    std::string pointer() const {
        std::string out;
        for (const auto &f : stack_) out += "/" + (f.array ? std::to_string(f.next) : escape(f.key));
        return out;
    }
    static std::string escape(const std::string &k) {
        std::string out;
        for (char c : k) out += c == '~' ? "~0" : c == '/' ? "~1" : std::string(1, c);
        return out;
    }
    bool scalar(std::size_t start) {
        at[pointer()] = start;
        advance();
        return true;
    }
    bool close() {
        stack_.pop_back();
        advance();
        return true;
    }
    void advance() {
        if (!stack_.empty() && stack_.back().array) ++stack_.back().next;
    }

    std::size_t word_start() const {
        std::size_t k = std::min(*consumed_, text_.size());
        while (k > 0 && std::isalpha(static_cast<unsigned char>(text_[k - 1]))) --k;
        return k;
    }
    std::size_t number_start() const {
        auto numeric = [](char c) { return std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.' || c == 'e' || c == 'E'; };
        std::size_t k = std::min(*consumed_, text_.size());
        // the lexer reads one character past a number
        if (k > 0 && !numeric(text_[k - 1])) --k;
        while (k > 0 && numeric(text_[k - 1])) --k;
        return k;
    }
    std::size_t string_start() const {
        std::size_t k = std::min(*consumed_, text_.size());
        if (k >= 2) k -= 2;
        while (k > 0 && !(text_[k] == '"' && text_[k - 1] != '\\')) --k;
        return k;
    }

    std::string_view text_;
    const std::size_t *consumed_;
    std::vector<Frame> stack_;
};

// Semantic checks against a parsed tree; errors are located lazily by
// re-scanning the text.
class Checker {
public:
    explicit Checker(std::string_view text)
      : text_(text) {
        try {
            root_ = Json::parse(text_.begin(), text_.end());
        } catch (const Json::parse_error &e) {
            std::string msg = e.what();
            auto cut = msg.find(": ", msg.find("column"));
            msg = cut == std::string::npos ? msg : msg.substr(cut + 2);
            auto [line, col] = line_column(text_, e.byte ? e.byte - 1 : 0);
            throw ParseError("invalid JSON: " + msg, line, col);
        }
    }

    const Json &root() const { return root_; }

    [[noreturn]] void fail(const std::string &ptr, const std::string &msg) const {
        std::size_t consumed = 0;
        PositionIndex index(text_, &consumed);
        Json::sax_parse(CountingIterator(text_.data(), &consumed), CountingIterator(text_.data() + text_.size(), &consumed),
                        &index);
        // fall back to the nearest enclosing value that was indexed
        std::string p = ptr;
        while (!index.at.count(p) && !p.empty()) p = p.substr(0, p.rfind('/'));
        auto [line, col] = line_column(text_, index.at.count(p) ? index.at[p] : 0);
        throw ParseError(msg + " at " + (ptr.empty() ? "/" : ptr), line, col);
    }

    const Json &require_object(const Json &j, const std::string &ptr) const {
        if (!j.is_object()) fail(ptr, "expected an object");
        return j;
    }

    int exponent(const Json &term, const char *k, const std::string &ptr) const {
        if (!term.contains(k)) fail(ptr, std::string("term is missing \"") + k + "\"");
        const Json &v = term.at(k);
        const std::string at = ptr + "/" + k;
        if (!v.is_number_integer()) fail(at, "exponent must be a nonnegative integer");
        if (v.is_number_unsigned() ? v.get<std::uint64_t>() > kMaxExponent
                                   : (v.get<std::int64_t>() < 0 || v.get<std::int64_t>() > kMaxExponent))
            fail(at, "exponent out of range [0, " + std::to_string(kMaxExponent) + "]");
        return static_cast<int>(v.get<std::int64_t>());
    }

    Rational coefficient(const Json &v, const std::string &ptr) const {
        if (v.is_number_float()) fail(ptr, "decimal coefficient rejected; write it as an exact \"p/q\" string");
        if (v.is_number_integer()) return Rational::parse(v.dump());
        if (!v.is_string()) fail(ptr, "coefficient must be an integer or a \"p/q\" string");
        try {
            return Rational::parse(v.get<std::string>());
        } catch (const Error &e) {
            fail(ptr, e.what());
        }
    }

    BiPoly terms(const Json &j, const std::string &ptr) const {
        if (!j.is_array()) fail(ptr, "expected a list of terms");
        BiPoly out;
        std::set<std::pair<int, int>> seen;
        for (std::size_t n = 0; n < j.size(); ++n) {
            const std::string at = ptr + "/" + std::to_string(n);
            const Json &t = j[n];
            if (!t.is_object()) fail(at, "term must be an object {i, j, c}");
            for (const auto &[k, _] : t.items())
                if (k != "i" && k != "j" && k != "c") fail(at + "/" + k, "unknown term field \"" + k + "\"");
            int i = exponent(t, "i", at), jj = exponent(t, "j", at);
            if (!t.contains("c")) fail(at, "term is missing \"c\"");
            Rational c = coefficient(t.at("c"), at + "/c");
            if (!seen.insert({i, jj}).second) fail(at, "duplicate term x^" + std::to_string(i) + " y^" + std::to_string(jj));
            out.add_term(i, jj, c);
        }
        return out;
    }

    std::string name(const Json &root) const {
        if (!root.contains("name")) return {};
        if (!root["name"].is_string()) fail("/name", "name must be a string");
        return root["name"].get<std::string>();
    }

private:
    std::string_view text_;
    Json root_;
};

} // namespace

bool SystemDocument::clockwise() const {
    auto it = metadata.find("clockwise");
    return it != metadata.end() && it->is_boolean() && it->get<bool>();
}

SystemDocument parse_document(std::string_view text) {
    Checker ck(text);
    const Json &root = ck.require_object(ck.root(), "");
    for (const auto &[k, _] : root.items())
        if (k != "name" && k != "x_dot" && k != "y_dot" && k != "metadata") ck.fail("/" + k, "unknown field \"" + k + "\"");
    for (const char *k : {"x_dot", "y_dot"})
        if (!root.contains(k)) ck.fail("", std::string("missing \"") + k + "\"");
    SystemDocument doc;
    doc.name = ck.name(root);
    doc.field = PlanarField(ck.terms(root["x_dot"], "/x_dot"), ck.terms(root["y_dot"], "/y_dot"));
    if (root.contains("metadata")) {
        doc.metadata = ck.require_object(root["metadata"], "/metadata");
        if (doc.metadata.contains("clockwise") && !doc.metadata["clockwise"].is_boolean())
            ck.fail("/metadata/clockwise", "clockwise must be true or false");
    }
    return doc;
}

Json terms_json(const BiPoly &p) {
    Json out = Json::array();
    for (const auto &[m, c] : p.terms()) out.push_back({{"i", m.i}, {"j", m.j}, {"c", c.str()}});
    return out;
}

Json document_json(const SystemDocument &doc) {
    return {{"name", doc.name}, {"x_dot", terms_json(doc.field.p())}, {"y_dot", terms_json(doc.field.q())},
            {"metadata", doc.metadata}};
}

BiPoly parse_curve(std::string_view text) {
    Checker ck(text);
    const Json &root = ck.require_object(ck.root(), "");
    for (const auto &[k, _] : root.items())
        if (k != "name" && k != "curve") ck.fail("/" + k, "unknown field \"" + k + "\"");
    if (!root.contains("curve")) ck.fail("", "missing \"curve\"");
    ck.name(root);
    return ck.terms(root["curve"], "/curve");
}

InverseSpec parse_spec(std::string_view text) {
    Checker ck(text);
    const Json &root = ck.require_object(ck.root(), "");
    for (const auto &[k, _] : root.items())
        if (k != "name" && k != "m" && k != "h" && k != "g") ck.fail("/" + k, "unknown field \"" + k + "\"");
    ck.name(root);
    if (!root.contains("m")) ck.fail("", "missing \"m\"");
    const Json &mj = root["m"];
    if (!mj.is_number_integer() || mj.get<std::int64_t>() < 2 || mj.get<std::int64_t>() > kMaxExponent)
        ck.fail("/m", "m must be an integer >= 2");
    InverseSpec s = InverseSpec::blank(static_cast<int>(mj.get<std::int64_t>()));

    auto slot = [&](const std::string &ptr, const std::string &key, int lo, int hi) {
        int idx = -1;
        try {
            std::size_t used = 0;
            idx = std::stoi(key, &used);
            if (used != key.size()) idx = -1;
        } catch (const std::exception &) {
        }
        if (idx < lo || idx > hi)
            ck.fail(ptr, "index \"" + key + "\" outside " + std::to_string(lo) + ".." + std::to_string(hi));
        return idx;
    };
    if (root.contains("h")) {
        const Json &h = ck.require_object(root["h"], "/h");
        for (const auto &[k, v] : h.items()) {
            const std::string ptr = "/h/" + k;
            s.h[slot(ptr, k, 3, s.m + 1)] = ck.terms(v, ptr);
        }
    }
    if (root.contains("g")) {
        const Json &g = ck.require_object(root["g"], "/g");
        for (const auto &[k, v] : g.items()) {
            const std::string ptr = "/g/" + k;
            s.g[slot(ptr, k, 0, s.m - 1)] = ck.terms(v, ptr);
        }
    }
    return s;
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::uint64_t fnv1a(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string digest(std::string_view bytes) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(bytes)));
    return std::string("fnv1a64:") + buf;
}

} // namespace cfocus::cli
