}

void still_works(int *v, int n) {
  #pragma acc parallel loop
  for (int i = 0; i < n; ++i) {
    v[i] = n - i;
  }
}
