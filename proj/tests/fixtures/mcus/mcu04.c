enum { N = 1000 };

void kernel04(void) {
  double m[N], sum = 0.0;
  <TARGET_PRAGMA_LOCATION>
  for (int i = 0; i < N; ++i) {
    sum += m[i];
  }
  (void)sum;
}
