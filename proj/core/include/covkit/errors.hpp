#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace covkit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class InvalidChart : public Error {
public:
    using Error::Error;
};

class InvalidScheme : public Error {
public:
    using Error::Error;
};

class InvalidFamily : public Error {
public:
    using Error::Error;
};

class EvaluationError : public Error {
public:
    using Error::Error;
};

/// A frame-change matrix A(x) was (numerically) singular at `point()`.
class SingularFrame : public Error {
public:
    SingularFrame(const std::string& what, const Eigen::Vector4d& point)
        : Error(what), point_(point) {}

    const Eigen::Vector4d& point() const noexcept { return point_; }

private:
    Eigen::Vector4d point_;
};

}  // namespace covkit
