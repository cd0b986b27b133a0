#include "tv4/reference_formulas.hpp"

namespace tv4 {

namespace {

template <int K>
double fat(const Field<K>& f, int i, int j, int k) {
  if (i < 0 || i >= f.rows() || j < 0 || j >= f.cols()) return 0.0;
  return f.at(i, j, k);
}

double iat(const Image& a, int i, int j) {
  if (i < 0 || i >= a.rows() || j < 0 || j >= a.cols()) return 0.0;
  return a(i, j);
}

}  // namespace

Image diff4_adjoint_closed_form(const Field4& u) {
  const int n1 = u.rows(), n2 = u.cols();
  Image out(n1, n2);
  for (int i = 0; i < n1; ++i) {
    for (int j = 0; j < n2; ++j) {
      // As written, the fourth bracket repeats the third (channel 3 again,
      // offset (-1,-1)) and channel 2 is shifted by a row; both disagree
      // with the true transpose and show up in the selfcheck report.
      out(i, j) = (fat(u, i - 1, j, 0) - fat(u, i, j, 0)) +
                  (fat(u, i - 1, j - 1, 1) - fat(u, i, j, 1)) +
                  (fat(u, i - 1, j - 1, 2) - fat(u, i, j, 2)) +
                  (fat(u, i - 1, j - 1, 2) - fat(u, i, j, 2));
    }
  }
  return out;
}

std::pair<Field4, Image> big_l_adjoint_closed_form(const BigLValue& v) {
  const Field4& vud = v.star[0];
  const Field4& vlr = v.star[1];
  const Field4& vc = v.star[2];
  const Field4& vp = v.star[3];
  const Image& al = v.alpha;
  const int n1 = al.rows(), n2 = al.cols();

  Field4 ustar(n1, n2);
  Image sstar(n1, n2);
  for (int i = 0; i < n1; ++i) {
    for (int j = 0; j < n2; ++j) {
      ustar.at(i, j, 0) =
          fat(vud, i, j, 0) +
          0.25 * (fat(vlr, i, j, 0) + fat(vlr, i + 1, j, 0) + fat(vlr, i, j - 1, 0) +
                  fat(vlr, i + 1, j - 1, 0)) +
          0.5 * (fat(vc, i, j, 0) + fat(vc, i + 1, j, 0)) +
          0.5 * (fat(vp, i, j, 0) + fat(vp, i, j - 1, 0)) + (iat(al, i + 1, j) - iat(al, i, j));

      // The second corner term reads channel 1 instead of channel 2, as the
      // closed form is written; the transpose uses channel 2.
      ustar.at(i, j, 1) =
          0.25 * (fat(vud, i, j, 1) + fat(vud, i, j + 1, 1) + fat(vud, i - 1, j, 1) +
                  fat(vud, i - 1, j + 1, 1)) +
          fat(vlr, i, j, 1) + 0.5 * (fat(vc, i, j, 1) + fat(vc, i, j + 1, 1)) +
          0.5 * (fat(vp, i, j, 1) + fat(vp, i - 1, j, 0)) + (iat(al, i, j + 1) - iat(al, i, j));

      ustar.at(i, j, 2) =
          0.5 * (fat(vud, i, j, 2) + fat(vud, i + 1, j, 2)) +
          0.5 * (fat(vlr, i, j, 2) + fat(vlr, i, j + 1, 2)) + fat(vp, i, j, 2) +
          0.25 * (fat(vc, i, j, 2) + fat(vc, i, j + 1, 2) + fat(vc, i + 1, j, 2) +
                  fat(vc, i + 1, j + 1, 2)) +
          (iat(al, i + 1, j + 1) - iat(al, i, j));

      // The alpha bracket here duplicates the channel-3 one; the transpose
      // reads alpha(i-1, j+1) instead.
      ustar.at(i, j, 3) =
          0.5 * (fat(vud, i, j, 3) + fat(vud, i, j - 1, 3)) +
          0.5 * (fat(vlr, i, j - 1, 3) + fat(vlr, i + 1, j - 1, 3)) + fat(vp, i, j - 1, 3) +
          0.25 * (fat(vc, i, j, 3) + fat(vc, i + 1, j, 3) + fat(vc, i, j - 1, 3) +
                  fat(vc, i + 1, j - 1, 3)) +
          (iat(al, i + 1, j + 1) - iat(al, i, j));

      sstar(i, j) = -al(i, j);
    }
  }
  return {std::move(ustar), std::move(sstar)};
}

}  // namespace tv4
