#include "masc/bundled.hpp"

#include <stdexcept>

#include "masc/checker.hpp"
#include "masc/diagnostics.hpp"
#include "masc/parser.hpp"

namespace masc {

namespace {

const char* kDivide = R"masc(<uint, uint> Divide(uint m, uint n) {
  assert(n != 0);
  uint quot = 0, rem = m;
  // MASC: m iterations
  while (rem >= n) {
    quot++;
    rem -= n;
  }
  return <quot, rem>;
}
)masc";

const char* kSum8 = R"masc(int[8] Sum8(int a[8], int b[8]) {
  for (uint i = 0; i < 8; i++) {
    a[i] += b[i];
  }
  return a;
}
)masc";

const char* kFoo = R"masc(<uint, uint, uint> bar(uint u, uint v) {
  return <u + v, u * v, u - v>;
}

uint foo(uint x, uint y, uint z) {
  uint u = y + z, v = u * x;
  <x, y, z> = bar(u, v);
  y = x > y ? 2 * u : v;
  if (x >= 0) {
    u = 2 * u;
  } else {
    v = 3 * u;
  }
  if (x < y) {
    return u;
  } else {
    return y + v;
  }
}
)masc";

const char* kBaz = R"masc(uint baz(uint x, uint y, uint z) {
  uint u = y + z, v = u * x;
  for (uint i = 0; i < u && u < v; i += 2) {
    v--;
    for (int j = 5; j >= -3; j--) {
      assert(v > 0);
      u = x + 3 * u;
    }
  }
  return u + v;
}
)masc";

const char* kSf8i2 = R"masc(ui8 Block() {
  sf8i2 x = -145;
  ui8 y = 100, z = 3;
  z = y[4:2] * x;
  return z;
}
)masc";

const char* kImul = R"masc(ui3 Encode(ui3 slice) {
  ui3 enc;
  switch (slice) {
  case 4: enc = 6; break;
  case 5: case 6: enc = 5; break;
  case 7: case 0: enc = 0; break;
  case 1: case 2: enc = 1; break;
  case 3: enc = 2; break;
  default: assert(false);
  }
  return enc;
}

ui3[17] Booth(ui32 x) {
  ui35 x35 = x << 1;
  ui3 a[17];
  for (int k = 0; k < 17; k++) {
    a[k] = Encode(x35[2 * k + 2:2 * k]);
  }
  return a;
}

ui33[17] PartialProducts(ui3 m21[17], ui32 x) {
  ui33 pp[17];
  for (int k = 0; k < 17; k++) {
    ui33 row;
    switch (m21[k][1:0]) {
    case 2: row = x << 1; break;
    case 1: row = x; break;
    default: row = 0;
    }
    pp[k] = m21[k][2] ? ~row : row;
  }
  return pp;
}

ui64[17] Align(ui3 bds[17], ui33 pps[17]) {
  bool sb[17], psb[18];
  for (int k = 0; k < 17; k++) {
    sb[k] = bds[k][2];
    psb[k + 1] = bds[k][2];
  }
  ui64 tble[17];
  for (int k = 0; k < 17; k++) {
    ui67 tmp = 0;
    tmp[2 * k + 32:2 * k] = pps[k];
    if (k == 0) {
      tmp[33] = sb[k];
      tmp[34] = sb[k];
      tmp[35] = !sb[k];
    } else {
      tmp[2 * k - 2] = psb[k];
      tmp[2 * k + 33] = !sb[k];
      tmp[2 * k + 34] = 1;
    }
    tble[k] = tmp[63:0];
  }
  return tble;
}

<ui64, ui64> Compress32(ui64 a, ui64 b, ui64 c) {
  ui64 s = a ^ b ^ c;
  ui64 carry = (a & b) | (a & c) | (b & c);
  return <s, carry << 1>;
}

<ui64, ui64> Compress42(ui64 a, ui64 b, ui64 c, ui64 d) {
  ui64 s1, c1;
  <s1, c1> = Compress32(a, b, c);
  ui64 s2, c2;
  <s2, c2> = Compress32(s1, c1, d);
  return <s2, c2>;
}

ui64 Sum(ui64 in[17]) {
  ui64 A1[8];
  for (uint i = 0; i < 4; i++) {
    <A1[2 * i + 0], A1[2 * i + 1]> = Compress42(in[4 * i], in[4 * i + 1], in[4 * i + 2], in[4 * i + 3]);
  }
  ui64 A2[4];
  for (uint i = 0; i < 2; i++) {
    <A2[2 * i + 0], A2[2 * i + 1]> = Compress42(A1[4 * i], A1[4 * i + 1], A1[4 * i + 2], A1[4 * i + 3]);
  }
  ui64 A3[2];
  <A3[0], A3[1]> = Compress42(A2[0], A2[1], A2[2], A2[3]);
  ui64 A4[2];
  <A4[0], A4[1]> = Compress32(A3[0], A3[1], in[16]);
  return A4[0] + A4[1];
}

ui64 Imul(ui32 s1, ui32 s2) {
  ui3 bd[17] = Booth(s1);
  ui33 pp[17] = PartialProducts(bd, s2);
  ui64 tble[17] = Align(bd, pp);
  ui64 prod = Sum(tble);
  return prod;
}
)masc";

}  // namespace

const std::vector<BundledProgram>& bundledPrograms() {
  static const std::vector<BundledProgram> progs = {
      {"divide", kDivide}, {"sum8", kSum8},   {"foo", kFoo},
      {"baz", kBaz},       {"sf8i2", kSf8i2}, {"imul", kImul},
  };
  return progs;
}

const std::string* bundledSource(const std::string& name) {
  for (const auto& p : bundledPrograms())
    if (p.name == name) return &p.source;
  return nullptr;
}

Program loadBundled(const std::string& name) {
  const std::string* src = bundledSource(name);
  if (!src) throw std::runtime_error("no bundled program named '" + name + "'");
  Diagnostics diags;
  Program p = parseProgram(*src, diags);
  rewriteBoundedLoops(p, diags);
  checkProgram(p, diags);
  if (diags.hasErrors())
    throw std::runtime_error("bundled program '" + name +
                             "' failed checks:\n" + diags.str());
  return p;
}

}  // namespace masc
