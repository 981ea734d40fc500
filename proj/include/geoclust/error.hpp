#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace geoclust {

enum class ErrorKind {
  InvalidInput,
  NoPath,
  BallTooLarge,
  TooLarge,
  InvalidPolicy,
  EmptyCluster,
  Disconnected,
  PartitionError,
  ContractViolation,
  NotAPartition,
  GuessUnderflow,
  RejectionExhausted,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library. `nodes` carries offending node ids
// when the failure is about specific points (partition breaches, etc.).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::vector<std::uint32_t> nodes = {})
      : std::runtime_error(message), kind_(kind), nodes_(std::move(nodes)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::vector<std::uint32_t>& nodes() const noexcept { return nodes_; }

 private:
  ErrorKind kind_;
  std::vector<std::uint32_t> nodes_;
};

}  // namespace geoclust
