#ifndef FREELIE_ERROR_HPP
#define FREELIE_ERROR_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace freelie {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
	using std::runtime_error::runtime_error;
};

// Violated operation precondition (alphabet mismatch, bad constant term, ...).
struct PreconditionError : Error {
	using Error::Error;
};

// Malformed input file / JSON document.
struct ParseError : Error {
	using Error::Error;
};

// A self-check that can only fail due to a bug, not due to bad input.
struct InternalError : Error {
	using Error::Error;
};

// Precondition failure established by a certificate sweep. Carries a plain-text
// rendering of the first few violations so callers can report them.
struct CertificationError : PreconditionError {
	CertificationError(const std::string &what, std::vector<std::string> violations)
	    : PreconditionError(what), violation_summaries(std::move(violations))
	{}

	std::vector<std::string> violation_summaries;
};

} // namespace freelie

#endif
