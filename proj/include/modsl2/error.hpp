#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace modsl2 {

/// Failure categories raised by the library. Each maps to a named error
/// condition of some operation; callers switch on the code, not the text.
enum class Errc {
  InvalidModulus,
  DimensionMismatch,
  ShapeMismatch,
  NotNilpotent,
  PowerNotZero,
  NotInvertible,
  ModulusMismatch,
  DOutOfRange,
  RelationsFail,
  OddRankForSp,
  SizeMismatch,
  InvalidLabel,
  OutsideMaxVariety,
  NoSolution,
  RankTooSmall,
  BlockDataMissing,
  HNotDiagonal,
  FPowerNotZero,
  NotInAlgebra,
  BudgetExceeded,
  ParseError,
};

constexpr std::string_view to_string(Errc c) {
  switch (c) {
    case Errc::InvalidModulus: return "InvalidModulus";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::NotNilpotent: return "NotNilpotent";
    case Errc::PowerNotZero: return "PowerNotZero";
    case Errc::NotInvertible: return "NotInvertible";
    case Errc::ModulusMismatch: return "ModulusMismatch";
    case Errc::DOutOfRange: return "DOutOfRange";
    case Errc::RelationsFail: return "RelationsFail";
    case Errc::OddRankForSp: return "OddRankForSp";
    case Errc::SizeMismatch: return "SizeMismatch";
    case Errc::InvalidLabel: return "InvalidLabel";
    case Errc::OutsideMaxVariety: return "OutsideMaxVariety";
    case Errc::NoSolution: return "NoSolution";
    case Errc::RankTooSmall: return "RankTooSmall";
    case Errc::BlockDataMissing: return "BlockDataMissing";
    case Errc::HNotDiagonal: return "HNotDiagonal";
    case Errc::FPowerNotZero: return "FPowerNotZero";
    case Errc::NotInAlgebra: return "NotInAlgebra";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace modsl2
