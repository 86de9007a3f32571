#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace legcalc {

// Error categories; the CLI maps these onto its exit-code contract
// (parse=2, non_generic=3, identity=4, generation=5).
enum class errc {
  parse,        // malformed input text / file
  invalid,      // structurally invalid data (density, positivity, closure)
  non_generic,  // degenerate geometry (tangency, triple point, vertex hit, reversal)
  identity,     // a checked integer identity or residual bound failed
  generation    // randomized construction exhausted its retry budget
};

enum class degeneracy { none, tangency, triple_point, vertex_hit, reversal };

class error : public std::runtime_error {
 public:
  error(errc code, std::string msg, degeneracy kind = degeneracy::none,
        std::ptrdiff_t index_a = -1, std::ptrdiff_t index_b = -1)
      : std::runtime_error(std::move(msg)),
        code_(code),
        kind_(kind),
        index_a_(index_a),
        index_b_(index_b) {}

  errc code() const noexcept { return code_; }
  degeneracy kind() const noexcept { return kind_; }
  std::ptrdiff_t index_a() const noexcept { return index_a_; }
  std::ptrdiff_t index_b() const noexcept { return index_b_; }

 private:
  errc code_;
  degeneracy kind_;
  std::ptrdiff_t index_a_;
  std::ptrdiff_t index_b_;
};

}  // namespace legcalc
