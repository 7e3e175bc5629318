#pragma once

#include <stdexcept>
#include <string>

namespace mpfa {

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class DegenerateRowError : public DomainError {
public:
    using DomainError::DomainError;
};

class UnsupportedLengthError : public DomainError {
public:
    using DomainError::DomainError;
};

class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace mpfa
