#include "galefan/golden.hpp"

#include <stdexcept>

namespace galefan::golden {

IntMatrix ex1_v() { return {{1, 0, 0, 0, -1, 1}, {0, 1, 0, 0, -1, 1}, {0, 0, 1, -1, -1, 1}}; }
IntMatrix ex1_q() { return {{1, 1, 1, 0, 1, 0}, {0, 0, 1, 1, 0, 0}, {0, 0, 0, 0, 1, 1}}; }
IntMatrix ex1_contracted_v() { return {{1, 0, 0, -1, 1}, {0, 1, 0, -1, 1}, {0, 0, 1, -1, 1}}; }
IntMatrix ex1_contracted_q() { return {{1, 1, 1, 1, 0}, {0, 0, 0, 1, 1}}; }

IntMatrix ex2_q() { return {{1, 1, 1, 0, 0, 1, 0}, {0, 0, 1, 1, 1, 0, 0}, {0, 0, 0, 0, 0, 1, 1}}; }
IntMatrix ex2_v() {
  return {{1, 0, 0, 0, 0, -1, 1}, {0, 1, 0, 0, 0, -1, 1}, {0, 0, 1, 0, -1, -1, 1}, {0, 0, 0, 1, -1, 0, 0}};
}

IntMatrix cex_v() {
  return {{1, 0, 0, -1, 0, 1, -1, 0}, {0, 1, 0, 1, 0, 0, -1, 1}, {0, 0, 1, 1, 0, -1, 0, 1}, {0, 0, 0, 0, 1, -1, 1, 0}};
}
IntMatrix cex_q() {
  return {{1, 0, 0, 1, 0, 1, 1, 0}, {0, 1, 1, 0, 0, 1, 1, 0}, {0, 0, 1, 1, 1, 2, 1, 0}, {0, 0, 0, 0, 0, 1, 1, 1}};
}

std::vector<NamedVector> cex_named() {
  return {{"q3", {0, 1, 1, 0}}, {"q4", {1, 0, 1, 0}}, {"q6", {1, 1, 2, 1}}, {"q7", {1, 1, 1, 1}},
          {"w1", {1, 1, 1, 0}}, {"w2", {2, 1, 2, 1}}, {"w3", {1, 2, 2, 1}}, {"w4", {2, 2, 3, 1}},
          {"w5", {2, 2, 2, 1}}};
}

IntVector cex_vec(const std::string& name) {
  for (auto& nv : cex_named())
    if (nv.name == name) return nv.v;
  throw std::out_of_range("unknown vector " + name);
}

std::vector<GoldenChamber> cex_chambers() {
  return {{{"q3", "q4", "w1", "w4"}, true},       {{"q4", "w1", "w2", "w4"}, true},
          {{"q3", "w1", "w3", "w4"}, true},       {{"q7", "w2", "w3", "w5"}, false},
          {{"q3", "q4", "q6", "w4"}, true},       {{"q6", "q7", "w2", "w3"}, false},
          {{"q3", "q6", "w3", "w4"}, true},       {{"w1", "w2", "w3", "w4", "w5"}, true},
          {{"q4", "q6", "w2", "w4"}, true},       {{"q6", "w2", "w3", "w4"}, true}};
}

std::vector<std::string> cex_mov() { return {"q3", "q4", "q6", "q7", "w1"}; }

std::vector<std::vector<std::size_t>> cex_sigma10() {
  return {{2, 4, 5, 7}, {4, 5, 7, 8}, {3, 4, 7, 8}, {3, 4, 6, 7}, {2, 4, 6, 7}, {3, 5, 7, 8},
          {2, 4, 5, 8}, {1, 3, 5, 7}, {2, 5, 6, 7}, {3, 4, 6, 8}, {2, 4, 6, 8}, {1, 5, 6, 7},
          {1, 3, 6, 7}, {1, 3, 5, 8}, {1, 2, 5, 8}, {1, 2, 5, 6}, {1, 3, 6, 8}, {1, 2, 6, 8}};
}

IntMatrix cex_g10_inverse() { return {{-1, -1, 1, 1}, {0, 0, 1, -2}, {1, 0, -1, 1}, {0, 1, -1, 1}}; }

std::vector<IntVector> cex_g10_relations() {
  return {{-1, -1, 0, 0, 1, 1, 0, 1}, {0, 0, 1, 1, 1, 0, -1, -2}, {1, 0, -1, 0, -1, 0, 1, 1}, {0, 1, 0, -1, -1, 0, 1, 1}};
}

std::vector<GoldenWall> cex_walls() {
  return {{10, 7, {1, 0, -1, 1}, {1, 0, -1, 0, -1, 0, 1, 1}},
          {7, 3, {-1, -1, 1, 1}, {-1, -1, 0, 0, 1, 1, 0, 1}},
          {3, 1, {0, 1, -1, 1}, {0, 1, 0, -1, -1, 0, 1, 1}}};
}

IntVector cex_anticanonical() { return {4, 4, 6, 3}; }

IntMatrix cex_base_q() { return {{1, 0, 0, 1, 0}, {0, 1, 1, 0, 0}, {0, 0, 1, 1, 1}}; }
IntMatrix cex_base_v() { return {{1, 0, 0, -1, 1}, {0, 1, -1, 0, 1}}; }

IntMatrix qs(long s) {
  if (s < 1) throw std::invalid_argument("s must be positive");
  const std::size_t w = static_cast<std::size_t>(s) + 7;
  IntMatrix q(4, w);
  const long head[4][6] = {{1, 0, 0, 1, 0, 1}, {0, 1, 1, 0, 0, 1}, {0, 0, 1, 1, 1, 2}, {0, 0, 0, 0, 0, 1}};
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 6; ++j) q(i, j) = head[i][j];
    for (std::size_t j = 6; j + 1 < w; ++j) q(i, j) = 1;
  }
  q(3, w - 1) = 1;
  return q;
}

}  // namespace galefan::golden
