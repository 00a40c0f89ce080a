#pragma once

// SDPA sparse interchange (.dat-s).  The emitted file encodes the instance
// for solvers using the standard SDPA reading
//     minimize c'x  s.t.  sum_i x_i M_i - M0  psd,
// so the objective and coefficient matrices are sign-flipped on the way out
// (M_i = -F_i) and back on the way in: an external solver reports the negated
// optimum, x* = -y*, while export->import is an exact structural identity.
// A trailing run of two or more 1x1 blocks is merged into one diagonal block
// written with a negative size, per the format's convention.

#include <iosfwd>
#include <string>

#include "stabsdp/blocksdp.hpp"

namespace stabsdp {

std::string export_sdpa(const BlockSDP& p);
void export_sdpa_file(const BlockSDP& p, const std::string& path);

BlockSDP import_sdpa(std::istream& in);
BlockSDP import_sdpa(const std::string& text);
BlockSDP import_sdpa_file(const std::string& path);

}  // namespace stabsdp
