#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace pcsf {

// Exact rational scalar used for every length, penalty and event time.
using Rat = mpq_class;

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Accepts "p/q", plain integers and decimal strings ("0.25" -> 1/4), all parsed exactly.
Rat rat_parse(const std::string& text);

// Canonical form: integer when the denominator is 1, otherwise "p/q".
std::string rat_str(const Rat& value);

inline Rat rat_int(long value) { return Rat(value); }

inline Rat rat_frac(long num, long den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

}  // namespace pcsf
