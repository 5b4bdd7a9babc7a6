#pragma once

#include <stdexcept>
#include <string>

namespace leafgrow {

// Base class for everything the library throws on contract violations.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A vertex id that does not exist in the tree.
class unknown_vertex : public error {
 public:
  using error::error;
};

// An attachment that breaks the growth rules: the target was not a leaf of the
// pre-batch snapshot, or the batch time does not move forward.
class invalid_attachment : public error {
 public:
  using error::error;
};

// Likelihood mass is zero over every leaf, so the posterior is undefined.
class degenerate_evidence : public error {
 public:
  using error::error;
};

// A branch point whose children all carry zero weight.
class degenerate_branch : public error {
 public:
  using error::error;
};

class invalid_parameter : public error {
 public:
  using error::error;
};

}  // namespace leafgrow
