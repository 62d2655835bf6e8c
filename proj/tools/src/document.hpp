#pragma once

#include "cfocus/inverse.hpp"
#include "cfocus/lyapunov.hpp"

#include <json.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cfocus::cli {

using Json = nlohmann::ordered_json;

// Anything wrong with the files handed to the CLI (as opposed to the engines).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input file; line and column are 1-based.
class ParseError : public InputError {
public:
    ParseError(const std::string &msg, std::size_t line, std::size_t column)
      : InputError(msg + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")")
      , message_(msg)
      , line_(line)
      , column_(column) {}

    // without the location suffix
    const std::string &message() const { return message_; }
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::string message_;
    std::size_t line_;
    std::size_t column_;
};

struct SystemDocument {
    std::string name;
    // As written in the file.
    PlanarField field;
    Json metadata = Json::object();

    // metadata.clockwise = true marks a (y, -x) linear part; the engines then
    // see the field with time reversed.
    bool clockwise() const;
    PlanarField analysis_field() const { return clockwise() ? field.reversed() : field; }
};

SystemDocument parse_document(std::string_view text);
Json document_json(const SystemDocument &doc);

// {"curve": [terms]}
BiPoly parse_curve(std::string_view text);

// {"m": 3, "h": {"3": [terms], ...}, "g": {"1": [terms], ...}}; H_2 is fixed and
// g_0 defaults to 1.
InverseSpec parse_spec(std::string_view text);

// Terms as [{"i": .., "j": .., "c": "p/q"}, ...] in graded order.
Json terms_json(const BiPoly &p);

// Whole file; throws InputError when unreadable.
std::string read_file(const std::string &path);

std::uint64_t fnv1a(std::string_view bytes);
// "fnv1a64:" followed by 16 hex digits
std::string digest(std::string_view bytes);

} // namespace cfocus::cli
