enum { N = 1000 };

void kernel02(void) {
  double a[N], b[N], c[N];
  <TARGET_PRAGMA_LOCATION>
  for (int i = 0; i < N; ++i) {
    c[i] = a[i] + b[i];
  }
}
