#pragma once

#include <stdexcept>
#include <string>

namespace saw {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// curve construction with vanishing discriminant
struct SingularCurve : Error {
  using Error::Error;
};

// reduction or counting requested at a prime dividing the discriminant
struct BadPrime : Error {
  using Error::Error;
};

// a puncture point has infinite order
struct NotTorsion : Error {
  using Error::Error;
};

// the generator has finite order
struct TorsionGenerator : Error {
  using Error::Error;
};

// no admissible place below the scan limit
struct NoAdmissiblePrime : Error {
  using Error::Error;
};

// residue not coprime to the modulus
struct InvalidProgression : Error {
  using Error::Error;
};

// the bounded search did not find the generator, so it cannot be listed first
struct GeneratorOutsideSearch : Error {
  using Error::Error;
};

// unparseable certificate text; message carries the location
struct MalformedCertificate : Error {
  using Error::Error;
};

}  // namespace saw
