#include "lampk/caps.hpp"

#include "lampk/errors.hpp"

namespace lampk {

const std::map<std::string, long long Caps::*>& Caps::fields() {
  static const std::map<std::string, long long Caps::*> m = {
      {"group_order", &Caps::group_order},
      {"subset_enum", &Caps::subset_enum},
      {"label_enum", &Caps::label_enum},
      {"tensor_dim", &Caps::tensor_dim},
      {"matrix_dim", &Caps::matrix_dim},
      {"class_list", &Caps::class_list},
      {"census_classes", &Caps::census_classes},
  };
  return m;
}

void Caps::set(const std::string& name, long long value) {
  auto it = fields().find(name);
  if (it == fields().end()) fail(ErrorKind::Parse, "unknown cap: " + name);
  if (value <= 0) fail(ErrorKind::Parse, "cap must be positive: " + name);
  this->*(it->second) = value;
}

long long Caps::get(const std::string& name) const {
  auto it = fields().find(name);
  if (it == fields().end()) fail(ErrorKind::Parse, "unknown cap: " + name);
  return this->*(it->second);
}

}  // namespace lampk
