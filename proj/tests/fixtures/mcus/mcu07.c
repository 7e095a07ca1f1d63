/* STUB_FAIL_BASELINE */
enum { N = 1000 };

void kernel07(void) {
  double v[N];
  <TARGET_PRAGMA_LOCATION>
  for (int i = 0; i < N; ++i) {
    v[i] = v[i] * v[i];
  }
}
