// Regenerates the bundled fixture configurations under fixtures/.
// Maintenance utility; the shipped JSON files are committed.

#include <k3deg/json_io.hpp>

#include <fstream>
#include <iostream>

using namespace k3deg;

namespace {

KulikovConfig cube(bool with_models) {
  KulikovConfig k;
  k.type = KulikovType::III;
  OrderedToricModel model{fan_P1xP1(), {{0}, {1}, {2}, {3}}};
  for (int i = 0; i < 6; ++i) {
    PairData p = pair_from_model(model);
    p.label = "cube" + std::to_string(i);
    if (!with_models) p.toric.reset();
    k.components.push_back(std::move(p));
  }
  auto e = [](int i, int j, int bi, int bj) { return EdgeData{i, j, bi, bj, 0}; };
  k.edges = {e(0, 1, 0, 1), e(0, 2, 1, 0), e(0, 4, 2, 3), e(0, 5, 3, 1),
             e(1, 2, 0, 1), e(1, 5, 2, 0), e(1, 3, 3, 1), e(2, 3, 2, 0),
             e(2, 4, 3, 0), e(3, 4, 3, 1), e(3, 5, 2, 3), e(4, 5, 2, 2)};
  k.triangles = {{0, 1, 2}, {1, 3, 2}, {3, 4, 2}, {4, 0, 2}, {1, 0, 5}, {3, 1, 5}, {4, 3, 5}, {0, 4, 5}};
  return k;
}

KulikovConfig two_rational_elliptic() {
  KulikovConfig k;
  k.type = KulikovType::II;
  Mat g(10, 10);
  g(0, 0) = 1;
  for (int i = 1; i < 10; ++i) g(i, i) = -1;
  Vec fiber(10, Int(-1));
  fiber[0] = 3;
  for (int i = 0; i < 2; ++i)
    k.components.push_back(make_pair_data(IntegerLattice(g, "RES"), {fiber}, BoundaryKind::SmoothElliptic, 1,
                                          "RES" + std::to_string(i)));
  k.edges = {EdgeData{0, 1, 0, 0, 1}};
  return k;
}

void write(const std::string& path, const KulikovConfig& k) {
  std::ofstream out(path);
  out << config_to_json(k).dump(1) << "\n";
  std::cout << "wrote " << path << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  std::string dir = argc > 1 ? argv[1] : "fixtures";
  write(dir + "/cube.json", cube(false));
  write(dir + "/cube_toric.json", cube(true));
  write(dir + "/typeII_2re.json", two_rational_elliptic());
  return 0;
}
