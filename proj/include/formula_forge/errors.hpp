#pragma once

#include <stdexcept>
#include <string>

namespace ff {

// Bad input for an operation (n <= 0, malformed strings, impossible splits,
// numerical failure). The CLI maps these to exit code 3.
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class MalformedString : public DomainError {
public:
    using DomainError::DomainError;
};

class NoMultiplicativeSplit : public DomainError {
public:
    using DomainError::DomainError;
};

class NonConvergence : public DomainError {
public:
    using DomainError::DomainError;
};

class NegativeRadicand : public DomainError {
public:
    using DomainError::DomainError;
};

class CacheError : public DomainError {
public:
    using DomainError::DomainError;
};

// A resource guard tripped (tower growth, size bounds). Exit code 4.
class ResourceGuard : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class LevelTooLarge : public ResourceGuard {
public:
    using ResourceGuard::ResourceGuard;
};

class MagnitudeError : public ResourceGuard {
public:
    using ResourceGuard::ResourceGuard;
};

class SizeGuard : public ResourceGuard {
public:
    using ResourceGuard::ResourceGuard;
};

// Raised when sieve completion finds an unfillable hole; unreachable unless
// composite generation is broken.
class InternalGapError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace ff
