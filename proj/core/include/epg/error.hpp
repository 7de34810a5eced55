#pragma once

#include <stdexcept>
#include <string>

namespace epg {

/// Base class for every error raised by the library.
class Error : public std::runtime_error
{
public:
	using std::runtime_error::runtime_error;
};

/// Invalid input: malformed files, inconsistent graphs, bad parameters.
class DataError : public Error
{
public:
	using Error::Error;
};

/// The quadratic node-placement system could not be solved.
class NumericalError : public Error
{
public:
	using Error::Error;
};

} // namespace epg
