#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace efie {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MeshError : public Error {
 public:
  using Error::Error;
};

// Malformed or unsupported Gmsh input. line() is 1-based, 0 when unknown.
class ParseError : public MeshError {
 public:
  ParseError(const std::string& what, int line)
      : MeshError(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class BasisError : public Error {
 public:
  using Error::Error;
};

class QuadratureError : public Error {
 public:
  using Error::Error;
};

// Iterative solver failure; carries the relative residual after each iteration.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, std::vector<double> residuals)
      : Error(what), residuals_(std::move(residuals)) {}
  explicit SolverError(const std::string& what) : Error(what) {}
  const std::vector<double>& residuals() const { return residuals_; }

 private:
  std::vector<double> residuals_;
};

}  // namespace efie
