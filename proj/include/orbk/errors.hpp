#pragma once

#include <orbk/types.hpp>

#include <stdexcept>
#include <string>
#include <utility>

namespace orbk {

// Base of every failure the library reports. The CLI maps each subclass
// to an exit code and a machine-readable error object.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
public:
    using Error::Error;
};

// The level is not a regular value. For toric models `support` is a
// coordinate set reaching the level with an infinite stabilizer; for GKM
// graphs `vertex` names the fixed point sitting on the level.
class NonRegularLevel : public Error {
public:
    NonRegularLevel(const std::string& what, Support support, std::string vertex = {})
        : Error(what), support(std::move(support)), vertex(std::move(vertex)) {}

    Support support;
    std::string vertex;
};

// The chosen component of the moment map is not proper on the level set.
// `ray` is a nonzero recession direction r >= 0, A r = 0 with xi.r <= 0.
class NotProper : public Error {
public:
    NotProper(const std::string& what, IntVec ray) : Error(what), ray(std::move(ray)) {}

    IntVec ray;
};

// A Morse coefficient vanishes: `coordinate` is a degenerate normal
// direction at critical support `support`.
class NonGenericXi : public Error {
public:
    NonGenericXi(const std::string& what, Support support, std::size_t coordinate)
        : Error(what), support(std::move(support)), coordinate(coordinate) {}

    Support support;
    std::size_t coordinate;
};

// Some edge weight pairs to zero with the circle, so M^{S^1} != M^T.
class InadmissibleCircle : public Error {
public:
    InadmissibleCircle(const std::string& what, std::vector<std::size_t> edges)
        : Error(what), edges(std::move(edges)) {}

    std::vector<std::size_t> edges;
};

class OracleBoundsExceeded : public Error {
public:
    using Error::Error;
};

}  // namespace orbk
