#include "fpuq/float_format.hpp"

#include <cstdio>
#include <regex>

namespace fpuq {

FloatFormat FloatFormat::from_name(const std::string& name) {
  if (name == "fp16" || name == "half") return fp16();
  if (name == "fp32" || name == "single") return fp32();
  if (name == "ref" || name == "fp64" || name == "double") return reference();
  // custom "p<P>e<Emin>:<Emax>", e.g. "p8e-6:6"
  static const std::regex re(R"(^p(\d+)e(-?\d+):(-?\d+)$)");
  std::smatch m;
  if (std::regex_match(name, m, re)) {
    FloatFormat fmt;
    fmt.precision_p = std::stoi(m[1]);
    fmt.e_min = std::stoi(m[2]);
    fmt.e_max = std::stoi(m[3]);
    fmt.validate();
    return fmt;
  }
  throw ConfigError("unknown format name: " + name +
                    " (expected fp16, fp32, ref, or p<P>e<Emin>:<Emax>)");
}

std::string FloatFormat::name() const {
  if (*this == fp16()) return "fp16";
  if (*this == fp32()) return "fp32";
  if (is_reference()) return "ref";
  char buf[64];
  std::snprintf(buf, sizeof buf, "p%de%d:%d", precision_p, e_min, e_max);
  return buf;
}

}  // namespace fpuq
