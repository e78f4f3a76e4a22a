// Copyright 2026 The qnute-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace qnute {

/** Base class of every error raised by the library. */
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/** Operand sizes disagree (qubit counts, vector lengths, matrix shapes). */
class DimensionError : public Error {
 public:
  using Error::Error;
};

/** A dense representation was requested for a register that is too large. */
class CapacityError : public Error {
 public:
  using Error::Error;
};

/** Input that carries no information, e.g. an all-zero sample vector. */
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

/** An argument is outside the domain of the operation. */
class DomainError : public Error {
 public:
  using Error::Error;
};

/** The operation is not defined for this register size. */
class UnsupportedSizeError : public Error {
 public:
  using Error::Error;
};

/** A unitary domain does not fit the register. */
class InvalidDomainError : public Error {
 public:
  using Error::Error;
};

/**
 * Failures of the numerical pipeline itself. The CLI maps every subclass to
 * exit code 3.
 */
class NumericalError : public Error {
 public:
  using Error::Error;
};

/** 1 + 2 dt Re<h> is not positive: the time step is too large. */
class StepSizeError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/** Every eigenvalue of the normal matrix fell below the cutoff. */
class SingularSystemError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/** Neither boundary carries linear data usable for rescaling. */
class ProtocolFailureError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/** The boundary amplitude used for rescaling vanishes. */
class DivisionDegeneracyError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace qnute
