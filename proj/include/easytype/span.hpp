#pragma once

#include <string>

namespace easytype {

/// Source region. Lines and columns are 1-based; end_col is one past the
/// last column of the region. Byte offsets index into the original source.
struct Span {
  std::string file;
  int start_line = 1;
  int start_col = 1;
  int end_line = 1;
  int end_col = 1;
  std::size_t byte_start = 0;
  std::size_t byte_end = 0;

  bool operator==(const Span& o) const {
    return file == o.file && start_line == o.start_line &&
           start_col == o.start_col && end_line == o.end_line &&
           end_col == o.end_col && byte_start == o.byte_start &&
           byte_end == o.byte_end;
  }

  // True when `inner` lies within this span.
  bool contains(const Span& inner) const {
    return byte_start <= inner.byte_start && inner.byte_end <= byte_end;
  }

  bool single_line() const { return start_line == end_line; }
};

// Smallest span covering both operands.
inline Span hull(const Span& a, const Span& b) {
  Span s = a;
  if (b.byte_start < s.byte_start) {
    s.byte_start = b.byte_start;
    s.start_line = b.start_line;
    s.start_col = b.start_col;
  }
  if (b.byte_end > s.byte_end) {
    s.byte_end = b.byte_end;
    s.end_line = b.end_line;
    s.end_col = b.end_col;
  }
  return s;
}

}  // namespace easytype
