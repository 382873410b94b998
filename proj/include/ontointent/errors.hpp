#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ontointent {

// Broad failure class; the CLI maps it onto its exit code.
enum class ErrorKind { Usage, Data, Backend };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define ONTOINTENT_DEFINE_ERROR(Name, Kind)                \
  class Name : public Error {                              \
   public:                                                 \
    explicit Name(const std::string& what)                 \
        : Error(ErrorKind::Kind, #Name ": " + what) {}     \
  }

ONTOINTENT_DEFINE_ERROR(ParseError, Data);
ONTOINTENT_DEFINE_ERROR(ValidationError, Data);
ONTOINTENT_DEFINE_ERROR(UnknownNode, Data);
ONTOINTENT_DEFINE_ERROR(RootOperand, Data);
ONTOINTENT_DEFINE_ERROR(DimensionMismatch, Data);
ONTOINTENT_DEFINE_ERROR(ZeroVector, Data);
ONTOINTENT_DEFINE_ERROR(EmptyText, Data);
ONTOINTENT_DEFINE_ERROR(EncoderFailure, Data);
ONTOINTENT_DEFINE_ERROR(EmptySubgraph, Data);
ONTOINTENT_DEFINE_ERROR(MissingExample, Usage);
ONTOINTENT_DEFINE_ERROR(TokenizationFailure, Data);
ONTOINTENT_DEFINE_ERROR(UnknownToken, Data);
ONTOINTENT_DEFINE_ERROR(DivergenceError, Data);
ONTOINTENT_DEFINE_ERROR(EmptyDataset, Data);
ONTOINTENT_DEFINE_ERROR(NonPositiveInput, Usage);
ONTOINTENT_DEFINE_ERROR(ConfigError, Usage);
ONTOINTENT_DEFINE_ERROR(BackendUnavailable, Backend);
ONTOINTENT_DEFINE_ERROR(CapabilityMismatch, Backend);

#undef ONTOINTENT_DEFINE_ERROR

class DatasetError : public Error {
 public:
  DatasetError(std::size_t line, const std::string& reason)
      : Error(ErrorKind::Data,
              "DatasetError: line " + std::to_string(line) + ": " + reason),
        line_(line) {}

  /// 1-based line number; 0 when the error is not tied to a line.
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class UnresolvedGoldIntent : public Error {
 public:
  UnresolvedGoldIntent(std::string id, std::size_t line)
      : Error(ErrorKind::Data, "UnresolvedGoldIntent: line " +
                                   std::to_string(line) + ": unknown intent '" +
                                   id + "'"),
        id_(std::move(id)) {}

  const std::string& id() const noexcept { return id_; }

 private:
  std::string id_;
};

}  // namespace ontointent
