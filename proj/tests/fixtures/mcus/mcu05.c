enum { N = 1000 };

void kernel05(void) {
  float x[N], y[N];
  float a = 2.0f;
  <TARGET_PRAGMA_LOCATION>
  for (int i = 0; i < N; ++i) {
    y[i] = a * x[i] + y[i];
  }
}
