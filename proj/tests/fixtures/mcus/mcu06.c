enum { N = 1000 };

void kernel06(void) {
  int v[N];
  <TARGET_PRAGMA_LOCATION>
  for (int i = 0; i < N; ++i) {
    v[i] = v[i] > 0 ? v[i] : -v[i];
  }
}
