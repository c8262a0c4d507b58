#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace hopfdeform {

// Exact arbitrary-precision rational scalar. GMP keeps values in lowest
// terms with positive denominator after canonicalize(); every scalar in the
// library goes through scalar_from_string or arithmetic on canonical values.
using Scalar = mpq_class;

inline bool is_zero(const Scalar& s) { return sgn(s) == 0; }

/// Parses "p", "-p" or "p/q" into a canonical rational. Throws on malformed
/// input or zero denominator.
inline Scalar scalar_from_string(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty scalar string");
    std::size_t slash = std::string::npos;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c == '/') {
            if (slash != std::string::npos || i == 0 || i + 1 == text.size())
                throw std::invalid_argument("malformed scalar: " + text);
            slash = i;
        } else if (c == '-') {
            if (i != 0 && i != slash + 1)
                throw std::invalid_argument("malformed scalar: " + text);
        } else if (c < '0' || c > '9') {
            throw std::invalid_argument("malformed scalar: " + text);
        }
    }
    Scalar q;
    if (mpq_set_str(q.get_mpq_t(), text.c_str(), 10) != 0)
        throw std::invalid_argument("malformed scalar: " + text);
    if (sgn(Scalar(q.get_den())) == 0)
        throw std::invalid_argument("zero denominator: " + text);
    q.canonicalize();
    return q;
}

/// Canonical string form: "p/q", or "p" when the denominator is 1.
inline std::string scalar_to_string(const Scalar& s) { return s.get_str(); }

}  // namespace hopfdeform
