#ifndef SYLVBQ_FIELD_IO_HPP
#define SYLVBQ_FIELD_IO_HPP

#include <iosfwd>

#include "sylvbq/types.hpp"

namespace sylvbq {

/// Plain-text field snapshot: header line `# sylvbq field J=<J> t=<t>`,
/// then one grid row per line, single-space separated. Complex entries
/// print as `re+imi` / `re-imi`.
void dump_field(std::ostream& out, const RealField& F, double t);
void dump_field(std::ostream& out, const ComplexField& F, double t);

struct FieldSnapshot {
  int J = 0;
  double t = 0.0;
  bool is_complex = false;
  ComplexField values;  // imaginary parts zero for real snapshots

  RealField real_values() const { return values.real(); }
};

FieldSnapshot load_field(std::istream& in);

}  // namespace sylvbq

#endif
