#pragma once

#include <stdexcept>
#include <string>

namespace sndp {

// Input file or argument violates the documented format / preconditions.
struct InvalidInstanceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The requirement cannot be met even if every vertex is bought.  Carries a
// deficient demand pair when the caller identified one (u,v >= 0) and a
// printable cut certificate.
struct InfeasibleError : std::runtime_error {
  int u = -1, v = -1;
  std::string certificate;
  explicit InfeasibleError(const std::string& msg) : std::runtime_error(msg) {}
  InfeasibleError(const std::string& msg, int u_, int v_, std::string cert)
      : std::runtime_error(msg), u(u_), v(v_), certificate(std::move(cert)) {}
};

// A condition that the algorithms guarantee by construction failed anyway.
struct InternalInvariantError : std::logic_error {
  using std::logic_error::logic_error;
};

// Brute-force routine asked to run above its hard size cap.
struct SizeRefusalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace sndp
