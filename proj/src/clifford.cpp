namespace flux::detail {
int placeholder_clifford = 0;
}
