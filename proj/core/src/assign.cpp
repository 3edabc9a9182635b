#include "shapebench/assign.hpp"

#include <algorithm>
#include <cstdint>
#include <cmath>
#include <limits>
#include <numeric>

#include "shapebench/textio.hpp"

namespace shapebench {

CostMatrix::CostMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols) {
  if (!(std::isfinite(fill) && fill >= 0.0)) {
    throw std::invalid_argument("cost entries must be finite and non-negative");
  }
  data_.assign(rows * cols, fill);
}

CostMatrix::CostMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) {
      throw std::invalid_argument("ragged cost matrix");
    }
    for (double v : row) {
      if (!(std::isfinite(v) && v >= 0.0)) {
        throw std::invalid_argument(
            "cost entries must be finite and non-negative");
      }
      data_.push_back(v);
    }
  }
}

void CostMatrix::set(std::size_t r, std::size_t c, double value) {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("cost index");
  if (!(std::isfinite(value) && value >= 0.0)) {
    throw std::invalid_argument("cost entries must be finite and non-negative");
  }
  data_[r * cols_ + c] = value;
}

CostMatrix CostMatrix::transposed() const {
  CostMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t.data_[c * rows_ + r] = (*this)(r, c);
  }
  return t;
}

namespace {

std::u32string decode_utf8(std::string_view s) {
  constexpr char32_t kReplacement = 0xFFFD;
  std::u32string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    int len = 0;
    char32_t cp = 0;
    if (b0 < 0x80) {
      len = 1;
      cp = b0;
    } else if ((b0 & 0xE0) == 0xC0) {
      len = 2;
      cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
      len = 3;
      cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
      len = 4;
      cp = b0 & 0x07;
    }
    bool ok = len > 0 && i + len <= s.size();
    for (int k = 1; ok && k < len; ++k) {
      const auto b = static_cast<unsigned char>(s[i + k]);
      if ((b & 0xC0) != 0x80) {
        ok = false;
      } else {
        cp = (cp << 6) | (b & 0x3F);
      }
    }
    static constexpr char32_t kMinForLen[] = {0, 0, 0x80, 0x800, 0x10000};
    if (ok && (cp < kMinForLen[len] || cp > 0x10FFFF ||
               (cp >= 0xD800 && cp <= 0xDFFF))) {
      ok = false;
    }
    if (ok) {
      out.push_back(cp);
      i += static_cast<std::size_t>(len);
    } else {
      out.push_back(kReplacement);
      ++i;
    }
  }
  return out;
}

// Column assignment for a matrix with rows <= cols; col_for_row[i] is the
// column matched to row i.
std::vector<std::size_t> shortest_augmenting_path(const CostMatrix& cost) {
  const std::size_t nr = cost.rows(), nc = cost.cols();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  std::vector<double> u(nr, 0.0), v(nc, 0.0), path_cost(nc);
  std::vector<std::size_t> path(nc), col_for_row(nr, kNone), row_for_col(nc, kNone);
  std::vector<char> row_done(nr), col_done(nc);

  for (std::size_t cur = 0; cur < nr; ++cur) {
    std::fill(path_cost.begin(), path_cost.end(), kInf);
    std::fill(path.begin(), path.end(), kNone);
    std::fill(row_done.begin(), row_done.end(), 0);
    std::fill(col_done.begin(), col_done.end(), 0);

    double min_val = 0.0;
    std::size_t i = cur;
    std::size_t sink = kNone;
    while (sink == kNone) {
      row_done[i] = 1;
      std::size_t best = kNone;
      double lowest = kInf;
      for (std::size_t j = 0; j < nc; ++j) {
        if (col_done[j]) continue;
        const double reduced = min_val + cost(i, j) - u[i] - v[j];
        if (reduced < path_cost[j]) {
          path[j] = i;
          path_cost[j] = reduced;
        }
        if (path_cost[j] < lowest) {
          lowest = path_cost[j];
          best = j;
        }
      }
      // Finite costs and nr <= nc guarantee an unvisited column exists.
      min_val = lowest;
      col_done[best] = 1;
      if (row_for_col[best] == kNone) {
        sink = best;
      } else {
        i = row_for_col[best];
      }
    }

    // Dual update keeps reduced costs non-negative on the new tree.
    u[cur] += min_val;
    for (std::size_t r = 0; r < nr; ++r) {
      if (row_done[r] && r != cur) u[r] += min_val - path_cost[col_for_row[r]];
    }
    for (std::size_t c = 0; c < nc; ++c) {
      if (col_done[c]) v[c] -= min_val - path_cost[c];
    }

    for (std::size_t j = sink;;) {
      const std::size_t r = path[j];
      row_for_col[j] = r;
      std::swap(col_for_row[r], j);
      if (r == cur) break;
    }
  }
  return col_for_row;
}


// Myers' bit-vector Levenshtein, blocked over 64-bit words. Each text
// character advances one column of the DP matrix; the vertical deltas of a
// column are kept as +1 (vp) and -1 (vn) bit masks, and horizontal deltas
// carry from one block into the next.
std::size_t bit_parallel_distance(std::u32string_view pattern,
                                  std::u32string_view text) {
  using Word = std::uint64_t;
  constexpr Word kHigh = Word{1} << 63;
  const std::size_t m = pattern.size();
  const std::size_t words = (m + 63) / 64;

  std::vector<char32_t> alphabet(pattern.begin(), pattern.end());
  std::sort(alphabet.begin(), alphabet.end());
  alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
  auto symbol = [&](char32_t c) -> std::size_t {
    const auto it = std::lower_bound(alphabet.begin(), alphabet.end(), c);
    return it != alphabet.end() && *it == c
               ? static_cast<std::size_t>(it - alphabet.begin())
               : alphabet.size();
  };
  // One extra all-zero row for characters absent from the pattern.
  std::vector<Word> peq((alphabet.size() + 1) * words, 0);
  for (std::size_t i = 0; i < m; ++i) {
    peq[symbol(pattern[i]) * words + i / 64] |= Word{1} << (i % 64);
  }

  std::vector<Word> vp(words, ~Word{0}), vn(words, 0);
  const Word last_bit = Word{1} << ((m - 1) % 64);
  std::size_t score = m;
  for (char32_t c : text) {
    const Word* eq_row = &peq[symbol(c) * words];
    int hin = 1;  // the top row grows by one per column
    for (std::size_t w = 0; w < words; ++w) {
      Word eq = eq_row[w];
      const Word pv = vp[w], mv = vn[w];
      const Word xv = eq | mv;
      if (hin < 0) eq |= 1;
      const Word xh = (((eq & pv) + pv) ^ pv) | eq;
      Word ph = mv | ~(xh | pv);
      Word mh = pv & xh;
      const Word out_bit = w + 1 == words ? last_bit : kHigh;
      const int hout = (ph & out_bit) ? 1 : (mh & out_bit) ? -1 : 0;
      ph <<= 1;
      mh <<= 1;
      if (hin < 0) {
        mh |= 1;
      } else if (hin > 0) {
        ph |= 1;
      }
      vp[w] = mh | ~(xv | ph);
      vn[w] = ph & xv;
      hin = hout;
    }
    score = static_cast<std::size_t>(static_cast<long long>(score) + hin);
  }
  return score;
}

}  // namespace

std::size_t edit_distance(std::string_view a, std::string_view b) {
  const std::u32string xs = decode_utf8(a);
  const std::u32string ys = decode_utf8(b);
  // A shared prefix or suffix never changes the distance.
  std::u32string_view x = xs, y = ys;
  while (!x.empty() && !y.empty() && x.front() == y.front()) {
    x.remove_prefix(1);
    y.remove_prefix(1);
  }
  while (!x.empty() && !y.empty() && x.back() == y.back()) {
    x.remove_suffix(1);
    y.remove_suffix(1);
  }
  // The shorter string is the pattern packed into bit vectors.
  if (x.size() < y.size()) std::swap(x, y);
  if (y.empty()) return x.size();
  return bit_parallel_distance(y, x);
}

Assignment solve_lap_jv(const CostMatrix& cost) {
  Assignment out;
  if (cost.empty()) {
    for (std::size_t r = 0; r < cost.rows(); ++r) out.unmatched_rows.push_back(r);
    for (std::size_t c = 0; c < cost.cols(); ++c) out.unmatched_cols.push_back(c);
    return out;
  }

  const bool transpose = cost.rows() > cost.cols();
  const CostMatrix work = transpose ? cost.transposed() : cost;
  const std::vector<std::size_t> match = shortest_augmenting_path(work);

  std::vector<char> row_used(cost.rows()), col_used(cost.cols());
  for (std::size_t i = 0; i < match.size(); ++i) {
    const std::size_t r = transpose ? match[i] : i;
    const std::size_t c = transpose ? i : match[i];
    out.pairs.emplace_back(r, c);
    row_used[r] = col_used[c] = 1;
  }
  std::sort(out.pairs.begin(), out.pairs.end());
  for (const auto& [r, c] : out.pairs) out.total_cost += cost(r, c);
  for (std::size_t r = 0; r < cost.rows(); ++r) {
    if (!row_used[r]) out.unmatched_rows.push_back(r);
  }
  for (std::size_t c = 0; c < cost.cols(); ++c) {
    if (!col_used[c]) out.unmatched_cols.push_back(c);
  }
  return out;
}

Assignment match_by_edit_distance(const std::vector<std::string>& gt_segments,
                                  const std::vector<std::string>& pred_segments) {
  std::vector<std::string> pred_norm;
  pred_norm.reserve(pred_segments.size());
  for (const auto& p : pred_segments) pred_norm.push_back(normalize(p));
  CostMatrix cost(gt_segments.size(), pred_segments.size());
  for (std::size_t i = 0; i < gt_segments.size(); ++i) {
    const std::string g = normalize(gt_segments[i]);
    for (std::size_t j = 0; j < pred_norm.size(); ++j) {
      cost.set(i, j, static_cast<double>(edit_distance(g, pred_norm[j])));
    }
  }
  return solve_lap_jv(cost);
}

Assignment match_by_euclidean(const std::vector<PixelPoint>& gt_points,
                              const std::vector<PixelPoint>& pred_points) {
  CostMatrix cost(gt_points.size(), pred_points.size());
  for (std::size_t i = 0; i < gt_points.size(); ++i) {
    for (std::size_t j = 0; j < pred_points.size(); ++j) {
      const double dx = gt_points[i].x - pred_points[j].x;
      const double dy = gt_points[i].y - pred_points[j].y;
      cost.set(i, j, std::hypot(dx, dy));
    }
  }
  return solve_lap_jv(cost);
}

}  // namespace shapebench
