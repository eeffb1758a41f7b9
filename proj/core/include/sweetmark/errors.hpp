#pragma once

#include <stdexcept>
#include <string>

namespace sweetmark {

/// Invalid parameters, incompatible vocabularies, malformed configuration.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed or unusable input data (corpora, model files, traces).
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A test statistic that cannot be computed (e.g. zero scored tokens).
/// Deliberately distinct from a negative verdict: "no evidence" is not
/// "evidence of absence".
class UndefinedStatistic : public DataError {
public:
    explicit UndefinedStatistic(const std::string& msg) : DataError(msg) {}
};

} // namespace sweetmark
