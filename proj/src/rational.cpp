#include "ncis/rational.hpp"

#include "ncis/errors.hpp"

namespace ncis {

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(std::string_view text) {
    if (text.empty()) throw InvalidArgument("empty rational literal");
    Rational q;
    if (q.set_str(std::string(text), 10) != 0) {
        throw InvalidArgument("malformed rational literal: " + std::string(text));
    }
    if (q.get_den() == 0) throw InvalidArgument("zero denominator");
    q.canonicalize();
    return q;
}

}  // namespace ncis
