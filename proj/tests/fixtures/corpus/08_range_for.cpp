#include <vector>

void clamp_all(std::vector<float>& vals) {
  #pragma acc parallel loop
  for (auto& v : vals) {
    if (v > 1.0f) v = 1.0f;
  }
}
