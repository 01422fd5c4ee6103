#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace lampk {

// Enumeration caps. Every cap is configurable from the CLI; defaults are
// chosen for desk-scale runs (seconds, not hours).
struct Caps {
  long long group_order = 10000;       // max order of a finite group model
  long long subset_enum = 1 << 20;     // max 2^|Gamma| for subset enumeration
  long long label_enum = 1 << 20;      // max m^|domain| for label functions
  long long tensor_dim = 4096;         // max dim of a dense tensor power
  long long matrix_dim = 4096;         // max side of an integer matrix
  long long class_list = 1 << 20;      // max materialized orbit-class list
  long long census_classes = 1LL << 40;  // max counted census classes

  // Named access for `--cap name=value` overrides.
  void set(const std::string& name, long long value);
  long long get(const std::string& name) const;
  static const std::map<std::string, long long Caps::*>& fields();
};

}  // namespace lampk
