void filter_cases(int *v, int n) {
  int t = 0;

  #pragma acc loop
  for (;;) ;

  #pragma acc loop
  for (int i = 0; i < n; ++i) {}

  #pragma acc loop
  for (int i = 0; i < n; ++i) { ; }

  #pragma acc loop
  for (int i = 0; i < n; ++i) {
    if (v[i] < 0) break;
    t += v[i];
  }

  #pragma acc loop
  for (int i = 0; i < n; ++i) {
    if (v[i] < 0) goto out;
    t += v[i];
  }

  #pragma acc loop
  for (int i = 0; i < n; ++i) {
    if (v[i] < 0) continue;
    t += v[i];
  }

  #pragma acc loop
  for (int i = 0; i < n; ++i) {
    if (v[i] < 0) return;
    t += v[i];
  }

  #pragma acc loop
  for (int i = 0; i < n; ++i) {
    switch (v[i]) {
      case 0:
        t += 1;
        break;
      default:
        t += 2;
        break;
    }
  }

  #pragma acc loop
  for (int i = 0; i < n; ++i) {
    v[i] = v[i] + 1;
  }

  #pragma acc loop
  for (int i = 0; i < n; ++i) {
    v[i] = v[i] * 2;
  }

  #pragma acc loop
  for (int i = 0; i < n; ++i) {
    v[i] = v[i] - 3;
  }

  #pragma acc loop
  for (int i = 0; i < n; ++i) {
    v[i] = -v[i];
  }

out:
  (void)t;
}
