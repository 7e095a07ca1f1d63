int sum_up(const int *v, int n) {
  int s = 0;
  #pragma acc parallel loop reduction(+:s)
  /* tight loop, no carried deps */
  for (int i = 0; i < n; ++i) {
    s += v[i];
  }
  return s;
}
